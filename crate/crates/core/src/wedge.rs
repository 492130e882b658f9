//! The exterior-square map on characteristic polynomials: from the quartic P
//! of an action on H^1 to the sextic Q of the induced action on H^2, whose
//! roots are the pairwise products of distinct roots of P, and the search for
//! all P with a given Q.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::numeric::serde_big;
use crate::poly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WedgeError {
    #[error("expected degree {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("polynomial is not reciprocal")]
    NotReciprocal,
    #[error("-Q(1) = {minus_q1} and Q(-1) = {q_minus1} are not both perfect squares")]
    NotSquare { minus_q1: BigInt, q_minus1: BigInt },
    #[error("constant term of the quartic is not 1")]
    ConstantTermNotOne,
}

fn check_shape(p: &IntPoly, expected: usize) -> Result<(), WedgeError> {
    let got = p.deg();
    if p.is_zero() || got != expected {
        return Err(WedgeError::WrongDegree { expected, got });
    }
    if !p.is_monic() {
        return Err(WedgeError::NotMonic);
    }
    Ok(())
}

/// Power sums p_1..p_count of the roots of a monic polynomial.
fn power_sums(p: &IntPoly, count: usize) -> Vec<BigInt> {
    let n = p.deg();
    // e_i = (-1)^i c_{n-i}
    let e: Vec<BigInt> = (0..=n)
        .map(|i| {
            let c = p.coeff(n - i);
            if i % 2 == 1 {
                -c
            } else {
                c
            }
        })
        .collect();
    let mut s = vec![BigInt::from(n)];
    for k in 1..=count {
        let mut acc = BigInt::zero();
        for i in 1..=k.min(n) {
            let term = if i == k {
                &e[i] * BigInt::from(k)
            } else {
                &e[i] * &s[k - i]
            };
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        s.push(acc);
    }
    s
}

/// Monic polynomial of degree `n` with the given power sums s_1..s_n.
fn from_power_sums(s: &[BigInt], n: usize) -> IntPoly {
    // k e_k = sum_{i=1}^k (-1)^(i-1) e_{k-i} s_i
    let mut e = vec![BigInt::from(1)];
    for k in 1..=n {
        let mut acc = BigInt::zero();
        for i in 1..=k {
            let term = &e[k - i] * &s[i];
            if i % 2 == 1 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        debug_assert!((&acc % BigInt::from(k)).is_zero());
        e.push(acc / BigInt::from(k));
    }
    // prod (t - r) = sum_k (-1)^k e_k t^(n-k)
    let coeffs = (0..=n)
        .map(|deg| {
            let k = n - deg;
            if k % 2 == 1 {
                -e[k].clone()
            } else {
                e[k].clone()
            }
        })
        .collect();
    IntPoly::new(coeffs)
}

/// Monic sextic whose roots are the six products r_i r_j (i < j) of the
/// roots of the monic quartic p.
pub fn exterior_square(p: &IntPoly) -> Result<IntPoly, WedgeError> {
    check_shape(p, 4)?;
    let ps = power_sums(p, 12);
    // sum_{i<j} (r_i r_j)^k = (p_k^2 - p_2k) / 2
    let mut s = vec![BigInt::from(6)];
    for k in 1..=6 {
        s.push((&ps[k] * &ps[k] - &ps[2 * k]) / BigInt::from(2));
    }
    Ok(from_power_sums(&s, 6))
}

fn exact_sqrt(v: &BigInt) -> Option<BigInt> {
    if v.is_negative() {
        return None;
    }
    let r = v.sqrt();
    (&r * &r == *v).then_some(r)
}

/// (m, n) with Q(1) = -m^2 and Q(-1) = n^2.
pub fn square_values(q: &IntPoly) -> Result<(BigInt, BigInt), WedgeError> {
    check_shape(q, 6)?;
    let minus_q1 = -q.eval_int(&BigInt::from(1));
    let q_minus1 = q.eval_int(&BigInt::from(-1));
    match (exact_sqrt(&minus_q1), exact_sqrt(&q_minus1)) {
        (Some(m), Some(n)) => Ok((m, n)),
        _ => Err(WedgeError::NotSquare { minus_q1, q_minus1 }),
    }
}

/// A quartic with constant term 1 together with its exterior square and
/// square values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WedgePair {
    pub p_poly: IntPoly,
    pub q_poly: IntPoly,
    #[serde(serialize_with = "serde_big::int")]
    pub m: BigInt,
    #[serde(serialize_with = "serde_big::int")]
    pub n: BigInt,
}

impl WedgePair {
    pub fn new(p: &IntPoly) -> Result<Self, WedgeError> {
        let q_poly = exterior_square(p)?;
        if p.coeff(0) != BigInt::from(1) {
            return Err(WedgeError::ConstantTermNotOne);
        }
        let (m, n) = square_values(&q_poly)?;
        Ok(WedgePair {
            p_poly: p.clone(),
            q_poly,
            m,
            n,
        })
    }
}

/// Why the inverse search produced no candidates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InversionObstruction {
    NotSquare,
    /// m and n have different parity, so j and k are not integers.
    ParityObstruction,
}

/// Quartics t^4 + c3 t^3 + c2 t^2 + c1 t + 1 that could have exterior square q.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InversionCandidates {
    pub q_poly: IntPoly,
    /// Coefficient of t^5 in q.
    #[serde(serialize_with = "serde_big::int")]
    pub a: BigInt,
    #[serde(serialize_with = "serde_big::opt_int")]
    pub m: Option<BigInt>,
    #[serde(serialize_with = "serde_big::opt_int")]
    pub n: Option<BigInt>,
    #[serde(serialize_with = "serde_big::opt_int")]
    pub j: Option<BigInt>,
    #[serde(serialize_with = "serde_big::opt_int")]
    pub k: Option<BigInt>,
    pub candidates: Vec<IntPoly>,
    pub verified: Vec<IntPoly>,
    pub reason: Option<InversionObstruction>,
}

/// For P = t^4 + c3 t^3 + c2 t^2 + c1 t + 1 the sextic is
/// t^6 - c2 t^5 + (c1 c3 - 1) t^4 + (2 c2 - c1^2 - c3^2) t^3 + ... , so
/// Q(1) = -(c3 - c1)^2, Q(-1) = (c3 + c1)^2 and c2 = -a. The pair (c3, c1)
/// is one of (j, k), (-j, -k), (k, j), (-k, -j).
pub fn invert_wedge(q: &IntPoly) -> Result<InversionCandidates, WedgeError> {
    check_shape(q, 6)?;
    if !q.is_reciprocal() {
        return Err(WedgeError::NotReciprocal);
    }
    let a = q.coeff(5);
    let mut out = InversionCandidates {
        q_poly: q.clone(),
        a: a.clone(),
        m: None,
        n: None,
        j: None,
        k: None,
        candidates: Vec::new(),
        verified: Vec::new(),
        reason: None,
    };
    let (m, n) = match square_values(q) {
        Ok(v) => v,
        Err(WedgeError::NotSquare { .. }) => {
            out.reason = Some(InversionObstruction::NotSquare);
            return Ok(out);
        }
        Err(e) => return Err(e),
    };
    out.m = Some(m.clone());
    out.n = Some(n.clone());
    let two = BigInt::from(2);
    if !((&n + &m) % &two).is_zero() {
        out.reason = Some(InversionObstruction::ParityObstruction);
        return Ok(out);
    }
    let j = (&n + &m) / &two;
    let k = (&n - &m) / &two;
    let quartic = |c3: &BigInt, c1: &BigInt| {
        IntPoly::new(vec![
            BigInt::from(1),
            c1.clone(),
            -a.clone(),
            c3.clone(),
            BigInt::from(1),
        ])
    };
    for (c3, c1) in [
        (j.clone(), k.clone()),
        (-&j, -&k),
        (k.clone(), j.clone()),
        (-&k, -&j),
    ] {
        let cand = quartic(&c3, &c1);
        if !out.candidates.contains(&cand) {
            out.candidates.push(cand);
        }
    }
    out.verified = out
        .candidates
        .iter()
        .filter(|c| exterior_square(c).as_ref() == Ok(q))
        .cloned()
        .collect();
    out.j = Some(j);
    out.k = Some(k);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(desc: &[i64]) -> IntPoly {
        IntPoly::from_desc(desc)
    }

    #[test]
    fn exterior_square_examples() {
        assert_eq!(exterior_square(&p(&[1, 0, 0, 1, 1])), Ok(p(&[1, 0, -1, -1, -1, 0, 1])));
        assert_eq!(exterior_square(&p(&[1, -1]).pow(4)), Ok(p(&[1, -1]).pow(6)));
        let want = &p(&[1, -1]).pow(2) * &p(&[1, -2, -2, -2, 1]);
        assert_eq!(exterior_square(&p(&[1, -2, 4, -2, 1])), Ok(want));
        assert_eq!(
            exterior_square(&p(&[1, 0, 1])),
            Err(WedgeError::WrongDegree { expected: 4, got: 2 })
        );
        assert_eq!(exterior_square(&p(&[2, 0, 0, 0, 1])), Err(WedgeError::NotMonic));
    }

    #[test]
    fn exterior_square_of_split_quartic() {
        // roots 1, 2, 3, 4: products 2, 3, 4, 6, 8, 12
        let quartic = (1..=4).fold(IntPoly::one(), |acc, r| &acc * &p(&[1, -r]));
        let sextic = [2, 3, 4, 6, 8, 12].iter().fold(IntPoly::one(), |acc, &r| &acc * &p(&[1, -r]));
        assert_eq!(exterior_square(&quartic), Ok(sextic));
    }

    #[test]
    fn square_value_examples() {
        let b = BigInt::from;
        assert_eq!(square_values(&p(&[1, 0, -1, -1, -1, 0, 1])), Ok((b(1), b(1))));
        let q = &p(&[1, -1]).pow(2) * &p(&[1, -2, -2, -2, 1]);
        assert_eq!(square_values(&q), Ok((b(0), b(4))));
        assert_eq!(
            square_values(&p(&[1, 0, 0, 0, 0, 0, 1])),
            Err(WedgeError::NotSquare { minus_q1: b(-2), q_minus1: b(2) })
        );
    }

    #[test]
    fn invert_sextic_finds_four() {
        let inv = invert_wedge(&p(&[1, 0, -1, -1, -1, 0, 1])).unwrap();
        let mut want = vec![p(&[1, 1, 0, 0, 1]), p(&[1, -1, 0, 0, 1]), p(&[1, 0, 0, 1, 1]), p(&[1, 0, 0, -1, 1])];
        let mut got = inv.verified.clone();
        want.sort_by(crate::poly::cmp_poly);
        got.sort_by(crate::poly::cmp_poly);
        assert_eq!(got, want);
        assert_eq!(inv.candidates.len(), 4);
        assert_eq!(inv.reason, None);
    }

    #[test]
    fn invert_collapses_duplicates() {
        let q = &p(&[1, -1]).pow(2) * &p(&[1, -2, -2, -2, 1]);
        let inv = invert_wedge(&q).unwrap();
        assert_eq!(inv.j, Some(BigInt::from(2)));
        assert_eq!(inv.k, Some(BigInt::from(2)));
        assert_eq!(inv.candidates.len(), 2);
        assert!(inv.verified.contains(&p(&[1, -2, 4, -2, 1])));
        assert!(inv.verified.contains(&p(&[1, 2, 4, 2, 1])));
    }

    #[test]
    fn invert_reports_obstructions() {
        let inv = invert_wedge(&p(&[1, 0, 0, 0, 0, 0, 1])).unwrap();
        assert!(inv.candidates.is_empty());
        assert_eq!(inv.reason, Some(InversionObstruction::NotSquare));
        assert_eq!(invert_wedge(&p(&[1, 2, 0, 0, 0, 0, 1])), Err(WedgeError::NotReciprocal));
    }

    #[test]
    fn reciprocal_sextics_never_hit_parity() {
        // m^2 + n^2 = Q(-1) - Q(1) = -4a - 2c is even, so m = n (mod 2)
        for a in -4..=4 {
            for b in -4..=4 {
                for c in -6..=6 {
                    let inv = invert_wedge(&p(&[1, a, b, c, b, a, 1])).unwrap();
                    assert_ne!(inv.reason, Some(InversionObstruction::ParityObstruction));
                }
            }
        }
    }

    #[test]
    fn wedge_pair_requires_unit_constant() {
        assert!(WedgePair::new(&p(&[1, 0, 0, 1, 1])).is_ok());
        assert_eq!(WedgePair::new(&p(&[1, 0, 0, 1, -1])), Err(WedgeError::ConstantTermNotOne));
    }
}
