use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::poly::IntPoly;

/// Square integer matrix, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![BigInt::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<BigInt>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        IntMatrix {
            n,
            data: rows.iter().flatten().cloned().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    /// Companion matrix of a monic polynomial: ones on the subdiagonal and
    /// -c_0, ..., -c_(n-1) down the last column.
    pub fn companion(p: &IntPoly) -> Self {
        let n = p.deg();
        let mut m = Self::zero(n);
        for i in 1..n {
            m[(i, i - 1)] = BigInt::one();
        }
        for i in 0..n {
            m[(i, n - 1)] = -p.coeff(i);
        }
        m
    }

    /// Block-diagonal matrix from square blocks.
    pub fn block_diag(blocks: &[IntMatrix]) -> Self {
        let n = blocks.iter().map(|b| b.n).sum();
        let mut m = Self::zero(n);
        let mut at = 0;
        for b in blocks {
            for i in 0..b.n {
                for j in 0..b.n {
                    m[(at + i, at + j)] = b[(i, j)].clone();
                }
            }
            at += b.n;
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, o: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * &o[(k, j)];
                }
            }
        }
        out
    }

    pub fn add(&self, o: &IntMatrix) -> IntMatrix {
        IntMatrix {
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> IntMatrix {
        IntMatrix {
            n: self.n,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn trace(&self) -> BigInt {
        (0..self.n).map(|i| &self[(i, i)]).sum()
    }

    pub fn det(&self) -> BigInt {
        crate::poly::bareiss_det(self.rows())
    }

    /// det(tI - A) by the Faddeev-LeVerrier recursion.
    pub fn charpoly(&self) -> IntPoly {
        let n = self.n;
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        let mut m = Self::zero(n);
        let id = Self::identity(n);
        for k in 1..=n {
            m = self.mul(&m).add(&id.scale(&coeffs[n - k + 1]));
            let tr = self.mul(&m).trace();
            coeffs[n - k] = -tr / BigInt::from(k);
        }
        IntPoly::new(coeffs)
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.n + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.n + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.n))?;
        for row in self.data.chunks(self.n) {
            seq.serialize_element(&Row(row))?;
        }
        seq.end()
    }
}

struct Row<'a>(&'a [BigInt]);

impl Serialize for Row<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for v in self.0 {
            seq.serialize_element(&Entry(v))?;
        }
        seq.end()
    }
}

struct Entry<'a>(&'a BigInt);

impl Serialize for Entry<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::numeric::serde_big::int(self.0, s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn companion_charpoly_round_trip() {
        for desc in [[1, 0, 0, 1, 1], [1, -2, 4, -2, 1], [1, 3, -7, 2, -1]] {
            let p = IntPoly::from_desc(&desc);
            assert_eq!(IntMatrix::companion(&p).charpoly(), p);
        }
    }

    #[test]
    fn charpoly_of_block_matrix() {
        let a = IntMatrix::from_i64_rows(&[&[0, 1], &[1, 1]]);
        let m = IntMatrix::block_diag(&[a.clone(), a]);
        assert_eq!(m.charpoly(), IntPoly::from_desc(&[1, -1, -1]).pow(2));
        assert_eq!(m.det(), BigInt::one());
    }

    #[test]
    fn determinant_and_transpose() {
        let m = IntMatrix::from_i64_rows(&[&[2, 0, 1], &[1, 3, 0], &[0, 1, 4]]);
        assert_eq!(m.det(), BigInt::from(25));
        assert_eq!(m.transpose().charpoly(), m.charpoly());
        assert_eq!(m.charpoly().coeff(0), -m.det());
    }
}
