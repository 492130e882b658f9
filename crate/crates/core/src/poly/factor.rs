//! Complete factorization of small monic integer polynomials.
//!
//! A monic factor g of degree d is pinned down by its values at d distinct
//! integer points, and each value g(x) must divide p(x). Walking all signed
//! divisor tuples and interpolating therefore visits every monic integer
//! factor of degree d. Candidates outside the Mignotte coefficient bound are
//! discarded before the trial division.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::{binomial, Integer};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{IntPoly, PolyError};

pub const MAX_FACTOR_DEGREE: usize = 8;

/// Irreducible monic factors with multiplicities, sorted by degree then
/// coefficients.
pub type Factorization = Vec<(IntPoly, u32)>;

/// Bound on |g_j| for any degree-d factor g of p: C(d, j) * ceil(||p||_2).
pub fn mignotte_bound(p: &IntPoly, d: usize) -> Vec<BigInt> {
    let norm = ceil_sqrt(&p.norm2_squared());
    (0..=d)
        .map(|j| binomial(BigInt::from(d), BigInt::from(j)) * &norm)
        .collect()
}

pub(crate) fn ceil_sqrt(n: &BigInt) -> BigInt {
    let s = n.sqrt();
    if &(&s * &s) < n {
        s + 1
    } else {
        s
    }
}

pub fn factor_bounded(p: &IntPoly) -> Result<Factorization, PolyError> {
    let degree = p.degree().ok_or(PolyError::Zero)?;
    if !p.is_monic() {
        return Err(PolyError::NotMonic);
    }
    if degree > MAX_FACTOR_DEGREE {
        return Err(PolyError::DegreeTooLarge {
            degree,
            max: MAX_FACTOR_DEGREE,
        });
    }
    let mut out: Factorization = Vec::new();
    let mut rest = p.clone();
    while rest.deg() > 0 {
        let g = smallest_factor(&rest).unwrap_or_else(|| rest.clone());
        let mut mult = 0;
        while let Ok(q) = rest.div_exact(&g) {
            rest = q;
            mult += 1;
            if rest.deg() == 0 {
                break;
            }
        }
        out.push((g, mult));
    }
    out.sort_by(|a, b| cmp_poly(&a.0, &b.0));
    Ok(out)
}

/// Total order used for deterministic output: degree, then coefficients
/// from the top down.
pub(crate) fn cmp_poly(a: &IntPoly, b: &IntPoly) -> Ordering {
    a.deg()
        .cmp(&b.deg())
        .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
}

/// Smallest-degree proper monic factor, which is necessarily irreducible.
fn smallest_factor(p: &IntPoly) -> Option<IntPoly> {
    let n = p.deg();
    if p.coeff(0).is_zero() {
        return Some(IntPoly::monomial(1));
    }
    for d in 1..=n / 2 {
        if let Some(g) = factor_of_degree(p, d) {
            return Some(g);
        }
    }
    None
}

struct SamplePoint {
    x: BigInt,
    divisors: Vec<BigInt>,
}

fn sample_points(p: &IntPoly, d: usize) -> Vec<SamplePoint> {
    // Prefer points where p is small: fewer divisors to enumerate.
    let mut pts: Vec<(BigInt, BigInt)> = (0..=24i64)
        .map(|k| if k % 2 == 0 { -(k / 2) } else { k / 2 + 1 })
        .map(BigInt::from)
        .map(|x| {
            let v = p.eval_int(&x);
            (x, v)
        })
        .filter(|(_, v)| !v.is_zero())
        .collect();
    pts.sort_by(|a, b| a.1.abs().cmp(&b.1.abs()).then_with(|| a.0.abs().cmp(&b.0.abs())));
    let mut scored: Vec<SamplePoint> = pts
        .into_iter()
        .take(2 * d + 4)
        .filter_map(|(x, v)| signed_divisors(&v).map(|divisors| SamplePoint { x, divisors }))
        .collect();
    scored.sort_by_key(|s| s.divisors.len());
    scored.truncate(d);
    scored
}

fn signed_divisors(v: &BigInt) -> Option<Vec<BigInt>> {
    let n = v.abs().to_u64()?;
    if n > 1_000_000_000_000_000 {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n % k == 0 {
            small.push(k);
            if k * k != n {
                large.push(n / k);
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    Some(
        small
            .into_iter()
            .flat_map(|k| [BigInt::from(k), -BigInt::from(k)])
            .collect(),
    )
}

/// Lagrange data for interpolating h (deg < d) through d points: h =
/// sum_i w_i * numer_i / denom_i.
struct Interpolator {
    numer: Vec<IntPoly>,
    scale: Vec<BigInt>,
    common: BigInt,
}

impl Interpolator {
    fn new(xs: &[BigInt]) -> Self {
        let mut numer = Vec::with_capacity(xs.len());
        let mut denom = Vec::with_capacity(xs.len());
        for (i, xi) in xs.iter().enumerate() {
            let mut num = IntPoly::one();
            let mut den = BigInt::one();
            for (j, xj) in xs.iter().enumerate() {
                if i != j {
                    num = &num * &IntPoly::linear_root(xj);
                    den *= xi - xj;
                }
            }
            numer.push(num);
            denom.push(den);
        }
        let common = denom.iter().fold(BigInt::one(), |l, d| l.lcm(d));
        let scale = denom.iter().map(|d| &common / d).collect();
        Interpolator {
            numer,
            scale,
            common,
        }
    }

    /// Integer polynomial through (x_i, w_i), if one exists.
    fn interpolate(&self, ws: &[BigInt]) -> Option<IntPoly> {
        let d = self.numer.len();
        let mut acc = vec![BigInt::zero(); d];
        for ((w, num), s) in ws.iter().zip(&self.numer).zip(&self.scale) {
            let f = w * s;
            for (k, c) in num.coeffs().iter().enumerate() {
                acc[k] += &f * c;
            }
        }
        let mut out = Vec::with_capacity(d);
        for c in acc {
            let (q, r) = c.div_rem(&self.common);
            if !r.is_zero() {
                return None;
            }
            out.push(q);
        }
        Some(IntPoly::new(out))
    }
}

fn factor_of_degree(p: &IntPoly, d: usize) -> Option<IntPoly> {
    let pts = sample_points(p, d);
    if pts.len() < d {
        return None;
    }
    let xs: Vec<BigInt> = pts.iter().map(|s| s.x.clone()).collect();
    let xd: Vec<BigInt> = xs.iter().map(|x| num_traits::pow(x.clone(), d)).collect();
    let interp = Interpolator::new(&xs);
    let bound = mignotte_bound(p, d);
    let lead = IntPoly::monomial(d);

    let mut idx = vec![0usize; d];
    let mut ws = vec![BigInt::zero(); d];
    loop {
        for k in 0..d {
            ws[k] = &pts[k].divisors[idx[k]] - &xd[k];
        }
        if let Some(h) = interp.interpolate(&ws) {
            if h.coeffs().iter().zip(&bound).all(|(c, b)| &c.abs() <= b) {
                let g = &lead + &h;
                if p.div_exact(&g).is_ok() {
                    return Some(g);
                }
            }
        }
        // odometer increment
        let mut k = 0;
        loop {
            if k == d {
                return None;
            }
            idx[k] += 1;
            if idx[k] < pts[k].divisors.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(desc: &[i64]) -> IntPoly {
        IntPoly::from_desc(desc)
    }

    fn product(f: &Factorization) -> IntPoly {
        f.iter().fold(IntPoly::one(), |acc, (g, m)| &acc * &g.pow(*m))
    }

    #[test]
    fn excluded_quartic_splits() {
        let f = factor_bounded(&p(&[1, -1, -4, -1, 1])).unwrap();
        assert_eq!(f, vec![(p(&[1, 1]), 2), (p(&[1, -3, 1]), 1)]);
    }

    #[test]
    fn irreducible_quartic() {
        let f = factor_bounded(&p(&[1, 0, 0, 1, 1])).unwrap();
        assert_eq!(f, vec![(p(&[1, 0, 0, 1, 1]), 1)]);
    }

    #[test]
    fn difference_of_squares() {
        let f = factor_bounded(&p(&[1, 0, -1])).unwrap();
        assert_eq!(f, vec![(p(&[1, -1]), 1), (p(&[1, 1]), 1)]);
    }

    #[test]
    fn product_of_two_quartics() {
        let a = p(&[1, -2, -2, -2, 1]);
        let b = p(&[1, 0, -1, 0, 1]);
        let f = factor_bounded(&(&a * &b)).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(product(&f), &a * &b);
    }

    #[test]
    fn zero_root_and_powers() {
        let q = &IntPoly::monomial(2) * &p(&[1, 1, 1]).pow(2);
        let f = factor_bounded(&q).unwrap();
        assert_eq!(f, vec![(p(&[1, 0]), 2), (p(&[1, 1, 1]), 2)]);
    }

    #[test]
    fn errors() {
        assert_eq!(factor_bounded(&p(&[2, 1])), Err(PolyError::NotMonic));
        assert_eq!(
            factor_bounded(&IntPoly::monomial(9)),
            Err(PolyError::DegreeTooLarge { degree: 9, max: 8 })
        );
        assert_eq!(factor_bounded(&IntPoly::zero()), Err(PolyError::Zero));
        assert!(factor_bounded(&IntPoly::one()).unwrap().is_empty());
    }

    #[test]
    fn mignotte_bound_shape() {
        // ||t^2 - 3t + 1||_2 = sqrt(11), ceil 4
        let b = mignotte_bound(&p(&[1, -3, 1]), 1);
        assert_eq!(b, vec![BigInt::from(4), BigInt::from(4)]);
    }
}
