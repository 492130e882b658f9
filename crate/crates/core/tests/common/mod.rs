//! Independent oracles: dense rational linear algebra and bisection, sharing
//! nothing with the library beyond the polynomial container.
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use salem_tori::poly::IntPoly;

pub type Matrix = Vec<Vec<BigInt>>;

pub fn p(desc: &[i64]) -> IntPoly {
    IntPoly::from_desc(desc)
}

/// Companion matrix: ones below the diagonal, last column -c_0 .. -c_(n-1).
pub fn companion(poly: &IntPoly) -> Matrix {
    let n = poly.deg();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for i in 1..n {
        m[i][i - 1] = BigInt::one();
    }
    for (i, row) in m.iter_mut().enumerate() {
        row[n - 1] = -poly.coeff(i);
    }
    m
}

/// Matrix of 2x2 minors on index pairs i < j in lexicographic order.
pub fn second_compound(a: &Matrix) -> Matrix {
    let n = a.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    pairs
        .iter()
        .map(|&(i, j)| {
            pairs
                .iter()
                .map(|&(k, l)| &a[i][k] * &a[j][l] - &a[i][l] * &a[j][k])
                .collect()
        })
        .collect()
}

/// Determinant by Gaussian elimination over the rationals.
pub fn det(a: &Matrix) -> BigRational {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect())
        .collect();
    let mut acc = BigRational::one();
    for c in 0..n {
        let Some(piv) = (c..n).find(|&r| !m[r][c].is_zero()) else {
            return BigRational::zero();
        };
        if piv != c {
            m.swap(piv, c);
            acc = -acc;
        }
        let pv = m[c][c].clone();
        acc *= &pv;
        for r in c + 1..n {
            let f = &m[r][c] / &pv;
            let pivot_row = m[c].clone();
            for (x, y) in m[r].iter_mut().zip(&pivot_row).skip(c) {
                *x -= &f * y;
            }
        }
    }
    acc
}

/// det(xI - A) sampled at x = 0..n and interpolated exactly.
pub fn charpoly_by_interpolation(a: &Matrix) -> IntPoly {
    let n = a.len();
    let xs: Vec<BigInt> = (0..=n as i64).map(BigInt::from).collect();
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|x| {
            let shifted: Matrix = (0..n)
                .map(|i| (0..n).map(|j| if i == j { x - &a[i][j] } else { -&a[i][j] }).collect())
                .collect();
            det(&shifted)
        })
        .collect();
    let mut coeffs = vec![BigRational::zero(); n + 1];
    for (k, yk) in ys.iter().enumerate() {
        let mut basis = vec![BigRational::one()];
        let mut denom = BigRational::one();
        for (_, xl) in xs.iter().enumerate().filter(|&(l, _)| l != k) {
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (i, c) in basis.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= c * BigRational::from_integer(xl.clone());
            }
            basis = next;
            denom *= BigRational::from_integer(&xs[k] - xl);
        }
        for (i, c) in basis.iter().enumerate() {
            coeffs[i] += c * yk / &denom;
        }
    }
    IntPoly::new(
        coeffs
            .into_iter()
            .map(|c| {
                assert!(c.is_integer(), "characteristic polynomial has integer coefficients");
                c.to_integer()
            })
            .collect(),
    )
}

/// Exact bisection for a simple real root in [lo, hi] where the signs differ.
pub fn bisect(poly: &IntPoly, mut lo: BigRational, mut hi: BigRational, width: &BigRational) -> (BigRational, BigRational) {
    let s_lo = poly.evaluate(&lo).signum();
    assert_ne!(s_lo, poly.evaluate(&hi).signum(), "bracket must change sign");
    let two = BigRational::from_integer(2.into());
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / &two;
        let s = poly.evaluate(&mid).signum();
        if s.is_zero() {
            return (mid.clone(), mid);
        }
        if s == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Rational approximation of a decimal literal.
pub fn decimal(text: &str) -> BigRational {
    let (int_part, frac) = text.split_once('.').unwrap_or((text, ""));
    let digits: BigInt = format!("{int_part}{frac}").parse().unwrap();
    BigRational::new(digits, num_traits::pow(BigInt::from(10), frac.len()))
}

/// Monic quartics with coefficients drawn uniformly from [-bound, bound].
pub fn random_monic_quartics(seed: u64, count: usize, bound: i64) -> Vec<IntPoly> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let mut desc = vec![1i64];
            desc.extend((0..4).map(|_| rng.gen_range(-bound..=bound)));
            p(&desc)
        })
        .collect()
}
