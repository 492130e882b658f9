use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::IntMatrix;
use crate::numeric::{ComplexBox, Interval};

/// a + b√−D for a fixed D held by the surrounding matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct QuadInt {
    #[serde(serialize_with = "crate::numeric::serde_big::int")]
    pub a: BigInt,
    #[serde(serialize_with = "crate::numeric::serde_big::int")]
    pub b: BigInt,
}

impl QuadInt {
    pub fn new(a: BigInt, b: BigInt) -> Self {
        QuadInt { a, b }
    }

    pub fn from_i64(a: i64, b: i64) -> Self {
        QuadInt::new(a.into(), b.into())
    }

    pub fn zero() -> Self {
        QuadInt::new(BigInt::zero(), BigInt::zero())
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn add(&self, o: &QuadInt) -> QuadInt {
        QuadInt::new(&self.a + &o.a, &self.b + &o.b)
    }

    pub fn sub(&self, o: &QuadInt) -> QuadInt {
        QuadInt::new(&self.a - &o.a, &self.b - &o.b)
    }

    pub fn mul(&self, o: &QuadInt, d: &BigInt) -> QuadInt {
        QuadInt::new(
            &self.a * &o.a - &self.b * &o.b * d,
            &self.a * &o.b + &self.b * &o.a,
        )
    }

    /// a^2 + D b^2.
    pub fn norm(&self, d: &BigInt) -> BigInt {
        &self.a * &self.a + d * &self.b * &self.b
    }

    /// Real and imaginary parts under √−D ↦ i√D, given an enclosure of √D.
    pub fn to_box(&self, sqrt_d: &Interval) -> ComplexBox {
        ComplexBox::new(
            Interval::point(BigRational::from_integer(self.a.clone())),
            sqrt_d.scale(&BigRational::from_integer(self.b.clone())),
        )
    }
}

/// 2x2 matrix over Z[√−D].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct QuadOrderMatrix {
    #[serde(serialize_with = "crate::numeric::serde_big::int")]
    pub d: BigInt,
    pub entries: [[QuadInt; 2]; 2],
}

impl QuadOrderMatrix {
    pub fn new(d: BigInt, entries: [[QuadInt; 2]; 2]) -> Self {
        QuadOrderMatrix { d, entries }
    }

    /// Entries given as (a, b) pairs meaning a + b√−D.
    pub fn from_i64(d: i64, e: [[(i64, i64); 2]; 2]) -> Self {
        let q = |(a, b): (i64, i64)| QuadInt::from_i64(a, b);
        QuadOrderMatrix::new(
            d.into(),
            [[q(e[0][0]), q(e[0][1])], [q(e[1][0]), q(e[1][1])]],
        )
    }

    /// [[0, -1], [1, b1 + b2√−D]].
    pub fn companion_shape(d: BigInt, b1: BigInt, b2: BigInt) -> Self {
        let one = BigInt::one();
        QuadOrderMatrix::new(
            d,
            [
                [QuadInt::zero(), QuadInt::new(-&one, BigInt::zero())],
                [QuadInt::new(one, BigInt::zero()), QuadInt::new(b1, b2)],
            ],
        )
    }

    /// (b1, b2) when the matrix is [[0, -1], [1, b1 + b2√−D]].
    pub fn companion_parameters(&self) -> Option<(BigInt, BigInt)> {
        let [[m00, m01], [m10, m11]] = &self.entries;
        let one = BigInt::one();
        let shaped = *m00 == QuadInt::zero()
            && *m01 == QuadInt::new(-&one, BigInt::zero())
            && *m10 == QuadInt::new(one, BigInt::zero());
        shaped.then(|| (m11.a.clone(), m11.b.clone()))
    }

    pub fn trace(&self) -> QuadInt {
        self.entries[0][0].add(&self.entries[1][1])
    }

    pub fn det(&self) -> QuadInt {
        let [[m00, m01], [m10, m11]] = &self.entries;
        m00.mul(m11, &self.d).sub(&m01.mul(m10, &self.d))
    }

    /// Whether the determinant is a unit of Z[√−D].
    pub fn is_unimodular(&self) -> bool {
        self.det().norm(&self.d).is_one()
    }

    /// Integer matrix on the basis (1, √−D) of each coordinate: a + b√−D
    /// becomes the block [[a, -bD], [b, a]].
    pub fn lift(&self) -> IntMatrix {
        let mut m = IntMatrix::zero(4);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                let (r, c) = (2 * i, 2 * j);
                m[(r, c)] = e.a.clone();
                m[(r, c + 1)] = -(&e.b * &self.d);
                m[(r + 1, c)] = e.b.clone();
                m[(r + 1, c + 1)] = e.a.clone();
            }
        }
        m
    }

    pub fn has_positive_d(&self) -> bool {
        self.d.is_positive()
    }
}
