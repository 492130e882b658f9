//! Sturm sequences over the integers.

use num_rational::BigRational;
use num_traits::Signed;
use thiserror::Error;

use crate::poly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SturmError {
    #[error("polynomial has repeated roots; divide by gcd(T, T') first")]
    NotSquarefree,
    #[error("the zero polynomial has no Sturm sequence")]
    Zero,
    #[error("interval endpoints are not increasing")]
    EmptyInterval,
}

/// Endpoint of a counting interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bound {
    NegInf,
    Finite(BigRational),
    PosInf,
}

impl Bound {
    pub fn at(x: BigRational) -> Self {
        Bound::Finite(x)
    }

    pub fn int(x: i64) -> Self {
        Bound::Finite(BigRational::from_integer(x.into()))
    }

    fn less_than(&self, other: &Bound) -> bool {
        match (self, other) {
            (Bound::NegInf, Bound::NegInf) | (Bound::PosInf, _) => false,
            (Bound::NegInf, _) | (_, Bound::PosInf) => true,
            (_, Bound::NegInf) => false,
            (Bound::Finite(a), Bound::Finite(b)) => a < b,
        }
    }
}

/// Signed remainder sequence T, T', -rem(T, T'), ... with each member
/// rescaled by a positive rational so it stays in Z[t].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SturmChain {
    chain: Vec<IntPoly>,
}

impl SturmChain {
    /// Chain for a squarefree polynomial.
    pub fn new(p: &IntPoly) -> Result<Self, SturmError> {
        if p.is_zero() {
            return Err(SturmError::Zero);
        }
        let chain = build_chain(p);
        if !chain.last().unwrap().is_constant() {
            return Err(SturmError::NotSquarefree);
        }
        Ok(SturmChain { chain })
    }

    /// Chain for the squarefree part of p, counting distinct roots.
    pub fn for_distinct_roots(p: &IntPoly) -> Result<Self, SturmError> {
        if p.is_zero() {
            return Err(SturmError::Zero);
        }
        Self::new(&p.squarefree_part())
    }

    pub fn chain(&self) -> &[IntPoly] {
        &self.chain
    }

    fn signs_at(&self, x: &Bound) -> impl Iterator<Item = i8> + '_ {
        let x = x.clone();
        self.chain.iter().map(move |q| match &x {
            Bound::Finite(v) => q.sign_at(v),
            Bound::PosInf => lead_sign(q),
            Bound::NegInf => {
                let s = lead_sign(q);
                if q.deg() % 2 == 1 {
                    -s
                } else {
                    s
                }
            }
        })
    }

    /// Sign changes along the chain at x, zeros skipped.
    pub fn variations(&self, x: &Bound) -> usize {
        let mut count = 0;
        let mut prev = 0i8;
        for s in self.signs_at(x) {
            if s == 0 {
                continue;
            }
            if prev != 0 && s != prev {
                count += 1;
            }
            prev = s;
        }
        count
    }

    /// Number of distinct real roots in (a, b].
    pub fn count(&self, a: &Bound, b: &Bound) -> Result<usize, SturmError> {
        if !a.less_than(b) {
            return Err(SturmError::EmptyInterval);
        }
        Ok(self.variations(a) - self.variations(b))
    }

    pub fn count_all(&self) -> usize {
        self.variations(&Bound::NegInf) - self.variations(&Bound::PosInf)
    }
}

fn lead_sign(q: &IntPoly) -> i8 {
    match q.leading() {
        Some(c) if c.is_positive() => 1,
        Some(c) if c.is_negative() => -1,
        _ => 0,
    }
}

fn build_chain(p: &IntPoly) -> Vec<IntPoly> {
    let mut chain = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(d);
    loop {
        let n = chain.len();
        let (a, b) = (&chain[n - 2], &chain[n - 1]);
        let mut r = a.pseudo_rem(b);
        // pseudo_rem multiplies by lc(b)^(da - db + 1); undo a negative factor
        let e = a.deg() - b.deg() + 1;
        if b.leading().unwrap().is_negative() && e % 2 == 1 {
            r = -&r;
        }
        if r.is_zero() {
            return chain;
        }
        let g = r.content();
        let next = IntPoly::new(r.coeffs().iter().map(|c| -(c / &g)).collect());
        chain.push(next);
    }
}

/// Distinct real roots of a squarefree T in (a, b].
pub fn count_real_roots(
    t: &IntPoly,
    a: &BigRational,
    b: &BigRational,
) -> Result<usize, SturmError> {
    SturmChain::new(t)?.count(&Bound::Finite(a.clone()), &Bound::Finite(b.clone()))
}

/// As [`count_real_roots`], replacing T by its squarefree part first.
pub fn count_distinct_real_roots(
    t: &IntPoly,
    a: &BigRational,
    b: &BigRational,
) -> Result<usize, SturmError> {
    SturmChain::for_distinct_roots(t)?.count(&Bound::Finite(a.clone()), &Bound::Finite(b.clone()))
}
