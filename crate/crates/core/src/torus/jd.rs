use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{pow2_inv, IntMatrix, TorusError, TorusModel};
use crate::numeric::{rat, sqrt_interval, ComplexBox, Interval};

impl TorusModel {
    /// Whether the lattice is invariant under (z1, z2) ↦ (√D i z1, −√D i z2):
    /// an integer J with J^2 = −D commuting with m_matrix, acting as √D i on
    /// γ1 and −√D i on γ2.
    pub fn verify_jd(&self, d: &BigInt) -> Result<bool, TorusError> {
        self.complex_multiplication(d, true)
    }

    /// As [`TorusModel::verify_jd`] for (z1, z2) ↦ (√D i z1, √D i z2).
    pub fn verify_jd_untwisted(&self, d: &BigInt) -> Result<bool, TorusError> {
        self.complex_multiplication(d, false)
    }

    /// With distinct eigenvalues, any J commuting with M is g(M) for the
    /// cubic g interpolating J's eigenvalues, so J is computed in box
    /// arithmetic, rounded to integers and checked exactly. Boxes narrower
    /// than 1/4 force the rounded matrix to equal g(M) whenever it passes:
    /// their difference would be a polynomial in M with row sums below 1 but
    /// eigenvalues in {0, ±2√D i}.
    fn complex_multiplication(&self, d: &BigInt, twisted: bool) -> Result<bool, TorusError> {
        if self.provenance.quad_order().is_none() {
            return Err(TorusError::NotApplicable);
        }
        if !d.is_positive() {
            return Err(TorusError::BadParameters("D must be positive".into()));
        }
        let (i, j) = self.pairing;
        let b = self.roots.boxes();
        let (Some(ic), Some(jc)) = (b[i].conjugate_partner, b[j].conjugate_partner) else {
            return Err(TorusError::DegenerateSpectrum);
        };
        if self.roots.len() != 4 || i == j || ic == j {
            return Err(TorusError::DegenerateSpectrum);
        }
        let eig = [i, j, ic, jc];
        let signs: [i64; 4] = if twisted { [1, -1, -1, 1] } else { [1, 1, -1, -1] };
        let m = &self.m_matrix;
        let mut powers = vec![IntMatrix::identity(4)];
        for k in 1..4 {
            powers.push(powers[k - 1].mul(m));
        }
        let quarter = rat(1, 4);
        let d_rat = BigRational::from_integer(d.clone());
        let mut bits = 32;
        loop {
            let fine = self.roots.refine(&pow2_inv(bits))?;
            let mu: Vec<ComplexBox> = eig.iter().map(|&k| fine.boxes()[k].as_complex()).collect();
            let sqrt_d = sqrt_interval(&d_rat, bits + 16);
            if let Some(coef) = interpolate(&mu, &sqrt_d, &signs) {
                let entries: Vec<ComplexBox> = (0..16)
                    .map(|e| {
                        (0..4).fold(zero_box(), |acc, p| {
                            let v = BigRational::from_integer(powers[p][(e / 4, e % 4)].clone());
                            acc.add(&coef[p].scale(&v))
                        })
                    })
                    .collect();
                if entries.iter().all(|z| z.width() < quarter) {
                    return Ok(round_and_check(&entries, m, d));
                }
            }
            bits *= 2;
        }
    }
}

fn zero_box() -> ComplexBox {
    ComplexBox::real(Interval::point(BigRational::zero()))
}

/// Ascending coefficients of the cubic g with g(mu_k) = signs[k] √D i.
fn interpolate(mu: &[ComplexBox], sqrt_d: &Interval, signs: &[i64; 4]) -> Option<Vec<ComplexBox>> {
    let mut coef = vec![zero_box(); 4];
    for k in 0..4 {
        let mut num = vec![ComplexBox::real(Interval::point(BigRational::one()))];
        let mut den = ComplexBox::real(Interval::point(BigRational::one()));
        for l in (0..4).filter(|&l| l != k) {
            // num *= (t - mu_l)
            let mut next = vec![zero_box(); num.len() + 1];
            for (p, c) in num.iter().enumerate() {
                next[p + 1] = next[p + 1].add(c);
                next[p] = next[p].sub(&c.mul(&mu[l]));
            }
            num = next;
            den = den.mul(&mu[k].sub(&mu[l]));
        }
        let value = ComplexBox::new(
            Interval::point(BigRational::zero()),
            sqrt_d.scale(&BigRational::from_integer(signs[k].into())),
        );
        let w = value.div(&den)?;
        for (p, c) in num.iter().enumerate() {
            coef[p] = coef[p].add(&c.mul(&w));
        }
    }
    Some(coef)
}

fn round_and_check(entries: &[ComplexBox], m: &IntMatrix, d: &BigInt) -> bool {
    let mut k = IntMatrix::zero(4);
    for (e, z) in entries.iter().enumerate() {
        let Some(v) = z.re.integers().next() else {
            return false;
        };
        if !z.im.contains_zero() {
            return false;
        }
        k[(e / 4, e % 4)] = v;
    }
    k.mul(&k) == IntMatrix::identity(4).scale(&-d) && k.mul(m) == m.mul(&k)
}
