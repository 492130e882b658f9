//! Salem polynomials: exact certification through the trace polynomial and
//! Sturm counting, plus root location.
//!
//! A reciprocal polynomial p of degree 2d can be written p(t) = t^d T(t + 1/t).
//! A root t on the unit circle maps to a real u = t + 1/t in [-2, 2]; a real
//! root t > 1 maps to u > 2. Counting real roots of T on the three ranges
//! therefore counts the roots of p on and off the circle exactly.

mod roots;
mod sturm;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::numeric::{int, Interval};
use crate::poly::{factor_bounded, Factorization, IntPoly, MAX_FACTOR_DEGREE};

pub use roots::{isolate_all_roots, root_separation_bound, RootBox, RootError, RootSet};
pub use sturm::{count_distinct_real_roots, count_real_roots, Bound, SturmChain, SturmError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("polynomial is not reciprocal")]
    NotReciprocal,
    #[error("reciprocal polynomial has odd degree")]
    OddDegree,
}

/// T with p(t) = t^d T(t + 1/t), for reciprocal p of degree 2d.
pub fn trace_transform(p: &IntPoly) -> Result<IntPoly, TraceError> {
    if !p.is_reciprocal() {
        return Err(TraceError::NotReciprocal);
    }
    let n = p.deg();
    if n % 2 == 1 {
        return Err(TraceError::OddDegree);
    }
    let d = n / 2;
    // V_k(u) = t^k + t^-k: V_0 = 2, V_1 = u, V_{k+1} = u V_k - V_{k-1}
    let u = IntPoly::monomial(1);
    let mut v_prev = IntPoly::constant(BigInt::from(2));
    let mut v = u.clone();
    let mut acc = IntPoly::constant(p.coeff(d));
    for k in 1..=d {
        acc = &acc + &v.scale(&p.coeff(d + k));
        let next = &(&u * &v) - &v_prev;
        v_prev = std::mem::replace(&mut v, next);
    }
    Ok(acc)
}

/// Why a polynomial failed Salem certification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum NotSalem {
    NotMonic,
    NotReciprocal,
    /// Degree must be even and between 2 and the factorization bound.
    UnsupportedDegree { degree: usize },
    Reducible {
        #[serde(serialize_with = "serialize_factorization")]
        factors: Factorization,
    },
    /// Trace roots in (-inf, -2), (-2, 2) and (2, inf) do not match 0, d-1, 1.
    WrongCircleCount { below: usize, inside: usize, above: usize },
}

impl std::fmt::Display for NotSalem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NotSalem::NotMonic => write!(f, "not monic"),
            NotSalem::NotReciprocal => write!(f, "not reciprocal"),
            NotSalem::UnsupportedDegree { degree } => write!(f, "unsupported degree {degree}"),
            NotSalem::Reducible { factors } => {
                write!(f, "reducible: ")?;
                for (g, m) in factors {
                    if *m == 1 {
                        write!(f, "({g})")?;
                    } else {
                        write!(f, "({g})^{m}")?;
                    }
                }
                Ok(())
            }
            NotSalem::WrongCircleCount { below, inside, above } => write!(
                f,
                "trace roots below -2: {below}, inside (-2, 2): {inside}, above 2: {above}"
            ),
        }
    }
}

impl std::error::Error for NotSalem {}

fn serialize_factorization<S: serde::Serializer>(f: &Factorization, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(f.len()))?;
    for (g, m) in f {
        seq.serialize_element(&FactorEntry { factor: g, multiplicity: *m })?;
    }
    seq.end()
}

#[derive(Serialize)]
struct FactorEntry<'a> {
    factor: &'a IntPoly,
    multiplicity: u32,
}

/// Proof that a polynomial is Salem, with an isolating interval for λ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SalemCertificate {
    pub s_poly: IntPoly,
    pub degree: usize,
    pub trace_poly: IntPoly,
    pub lambda_interval: Interval,
    pub roots_on_circle: usize,
}

/// Width of the interval stored in a fresh certificate.
const CERT_WIDTH_BITS: u32 = 20;

pub fn is_salem(p: &IntPoly) -> Result<SalemCertificate, NotSalem> {
    if !p.is_monic() {
        return Err(NotSalem::NotMonic);
    }
    if !p.is_reciprocal() {
        return Err(NotSalem::NotReciprocal);
    }
    let n = p.deg();
    if n < 2 || n % 2 == 1 || n > MAX_FACTOR_DEGREE {
        return Err(NotSalem::UnsupportedDegree { degree: n });
    }
    let factors = factor_bounded(p).expect("monic of supported degree");
    if factors.len() != 1 || factors[0].1 != 1 {
        return Err(NotSalem::Reducible { factors });
    }
    let trace = trace_transform(p).expect("reciprocal of even degree");
    let chain = SturmChain::new(&trace).expect("trace of an irreducible polynomial is squarefree");
    let (m2, p2) = (Bound::int(-2), Bound::int(2));
    // T is irreducible of degree >= 2 or linear with a non-+-2 root, so
    // neither endpoint is a root and half-open counts are open counts.
    let below = chain.count(&Bound::NegInf, &m2).unwrap();
    let inside = chain.count(&m2, &p2).unwrap();
    let above = chain.count(&p2, &Bound::PosInf).unwrap();
    let d = n / 2;
    if below != 0 || above != 1 || inside != d - 1 {
        return Err(NotSalem::WrongCircleCount { below, inside, above });
    }
    let width = BigRational::new(BigInt::one(), BigInt::one() << CERT_WIDTH_BITS);
    let lambda_interval = bisect_lambda(p, &width);
    Ok(SalemCertificate {
        s_poly: p.clone(),
        degree: n,
        trace_poly: trace,
        lambda_interval,
        roots_on_circle: n - 2,
    })
}

/// Exact-sign bisection for the unique root of S in (1, 1 + max|c|).
/// Every call walks the same sequence of dyadic intervals, so results for
/// different widths are nested.
fn bisect_lambda(s: &IntPoly, width: &BigRational) -> Interval {
    let mut lo = int(1);
    let mut hi = int(1) + BigRational::from_integer(s.max_abs_coeff());
    let s_lo = s.sign_at(&lo);
    debug_assert!(s_lo != 0 && s.sign_at(&hi) == -s_lo);
    while &(&hi - &lo) > width {
        let mid = (&lo + &hi) / int(2);
        let sm = s.sign_at(&mid);
        if sm == 0 {
            return Interval::point(mid);
        }
        if sm == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Interval::new(lo, hi)
}

/// Interval of width at most eps containing λ.
pub fn lambda_approx(cert: &SalemCertificate, eps: &BigRational) -> Interval {
    assert!(eps.is_positive(), "eps must be positive");
    bisect_lambda(&cert.s_poly, eps)
}

/// Certified interval for log λ of width at most eps.
pub fn log_lambda(cert: &SalemCertificate, eps: &BigRational) -> Interval {
    let half = eps / int(2);
    let lam = lambda_approx(cert, &half);
    // ln hi - ln lo <= (hi - lo) / lo < hi - lo since lo > 1
    let tol = eps / int(4);
    let lo = crate::numeric::ln_interval(&lam.lo, &tol).lo;
    let hi = crate::numeric::ln_interval(&lam.hi, &tol).hi;
    Interval::new(lo, hi)
}
