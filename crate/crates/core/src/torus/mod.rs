//! Explicit tori with an automorphism.
//!
//! A model is an integer 4x4 matrix for the action on H^1 together with the
//! choice of the two eigenvalues (γ1, γ2) that act on H^{1,0}. For non-real
//! eigenvalues the matrix and this choice determine the torus; the other two
//! eigenvalues are the complex conjugates.

mod jd;
mod matrix;
mod quad;

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::classify::square_witness;
use crate::numeric::{cmp_intervals, int, ln_interval, ComplexBox, Interval};
use crate::poly::{factor_bounded, IntPoly, PolyError};
use crate::salem::{
    is_salem, isolate_all_roots, root_separation_bound, Bound, RootBox, RootError, RootSet,
    SalemCertificate, SturmChain,
};
use crate::wedge::exterior_square;

pub use matrix::IntMatrix;
pub use quad::{QuadInt, QuadOrderMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TorusError {
    #[error("expected a degree-4 polynomial, got degree {0}")]
    WrongDegree(usize),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("constant term must be 1")]
    ConstantTermNotOne,
    #[error("polynomial has real roots; no complex structure pairs them into conjugates")]
    RealRoots,
    #[error("polynomial has repeated roots")]
    RepeatedRoots,
    #[error("pairing must pick one root from each conjugate pair (indices 0..4)")]
    BadPairing,
    #[error("determinant is not a unit of the quadratic order")]
    NotUnit,
    #[error("t^2 - rt + det must have real roots off the unit circle")]
    NotHyperbolic,
    #[error("automorphism has zero entropy")]
    ZeroEntropy,
    #[error("invalid parameters: {0}")]
    BadParameters(String),
    #[error("model does not come from a matrix over a quadratic order")]
    NotApplicable,
    #[error("eigenvalues are not distinct")]
    DegenerateSpectrum,
    #[error(transparent)]
    Roots(#[from] RootError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// How a model was built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Provenance {
    /// Companion matrix of a quartic with a chosen pairing.
    Quartic { poly: IntPoly, pairing: [usize; 2] },
    /// Matrix over Z[√−D] acting on E x E.
    QuadOrder { matrix: QuadOrderMatrix },
    /// Two copies of the companion block of t^2 - rt + det.
    Gl2z { r: i64, det: i64 },
    /// [[0, -1], [1, 1 + 2^(n-k) √−4^k]] over Z[2^k i].
    PowerOfTwo { n: u32, k: u32, matrix: QuadOrderMatrix },
    /// Integer matrix with characteristic polynomial t^4 + at^2 + t + 1 and
    /// b dividing 1 + a.
    DegreeSix { a: i64, b: i64 },
}

impl Provenance {
    pub fn quad_order(&self) -> Option<&QuadOrderMatrix> {
        match self {
            Provenance::QuadOrder { matrix } | Provenance::PowerOfTwo { matrix, .. } => Some(matrix),
            _ => None,
        }
    }
}

/// Picard rank forced by the Salem degree and projectivity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PicardRank {
    Zero,
    Two,
    Four,
    Unconstrained,
}

impl PicardRank {
    pub fn as_number(self) -> Option<u32> {
        match self {
            PicardRank::Zero => Some(0),
            PicardRank::Two => Some(2),
            PicardRank::Four => Some(4),
            PicardRank::Unconstrained => None,
        }
    }
}

impl std::fmt::Display for PicardRank {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.as_number() {
            Some(n) => write!(f, "{n}"),
            None => f.write_str("unconstrained"),
        }
    }
}

impl Serialize for PicardRank {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.as_number() {
            Some(n) => s.serialize_u32(n),
            None => s.serialize_str("unconstrained"),
        }
    }
}

/// Characteristic polynomial on the Néron-Severi group, when forced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "poly", rename_all = "kebab-case")]
pub enum NsCharpoly {
    Forced(IntPoly),
    NotForced,
}

/// Torus automorphism given by its H^1 matrix and holomorphic eigenvalues.
///
/// `roots` isolates the distinct roots of p_charpoly; the pairing indexes
/// into it. Models are immutable; refinement returns new root sets.
#[derive(Debug, Clone)]
pub struct TorusModel {
    m_matrix: IntMatrix,
    p_charpoly: IntPoly,
    q_charpoly: IntPoly,
    roots: RootSet,
    pairing: (usize, usize),
    h20_product: ComplexBox,
    provenance: Provenance,
    reoriented: bool,
    reorient_noop: bool,
}

impl Serialize for TorusModel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let (g1, g2) = self.pairing();
        let mut st = s.serialize_struct("TorusModel", 10)?;
        st.serialize_field("gamma1", g1)?;
        st.serialize_field("gamma2", g2)?;
        st.serialize_field("h20_product", &self.h20_product)?;
        st.serialize_field("m_matrix", &self.m_matrix)?;
        st.serialize_field("p_charpoly", &self.p_charpoly)?;
        st.serialize_field("pairing", &[self.pairing.0, self.pairing.1])?;
        st.serialize_field("provenance", &self.provenance)?;
        st.serialize_field("q_charpoly", &self.q_charpoly)?;
        st.serialize_field("reorient_noop", &self.reorient_noop)?;
        st.serialize_field("reoriented", &self.reoriented)?;
        st.end()
    }
}

fn pow2_inv(bits: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << bits)
}

impl TorusModel {
    fn assemble(
        m_matrix: IntMatrix,
        roots: RootSet,
        pairing: (usize, usize),
        provenance: Provenance,
    ) -> TorusModel {
        let p_charpoly = m_matrix.charpoly();
        let q_charpoly = exterior_square(&p_charpoly).expect("degree-4 monic charpoly");
        let b = roots.boxes();
        let h20_product = b[pairing.0].as_complex().mul(&b[pairing.1].as_complex());
        TorusModel {
            m_matrix,
            p_charpoly,
            q_charpoly,
            roots,
            pairing,
            h20_product,
            provenance,
            reoriented: false,
            reorient_noop: false,
        }
    }

    /// Model on the companion matrix of p. Roots are indexed in canonical
    /// order: 0 and 2 are the upper roots of the two conjugate pairs, 1 and
    /// 3 their conjugates. The pairing takes one index from {0, 1} and one
    /// from {2, 3}.
    pub fn from_quartic(p: &IntPoly, pairing: (usize, usize)) -> Result<TorusModel, TorusError> {
        check_quartic(p)?;
        let provenance = Provenance::Quartic {
            poly: p.clone(),
            pairing: [pairing.0, pairing.1],
        };
        Self::with_nonreal_pairing(IntMatrix::companion(p), pairing, provenance)
    }

    /// Model on the integer matrix with rows [0,0,-1,0], [1,0,0,0],
    /// [0,1,1,b], [0,0,-(1+a)/b,-1], whose characteristic polynomial is
    /// t^4 + at^2 + t + 1.
    pub fn degree_six_model(a: i64, b: i64, pairing: (usize, usize)) -> Result<TorusModel, TorusError> {
        if b == 0 || (1 + a) % b != 0 {
            return Err(TorusError::BadParameters(format!("b = {b} must be a nonzero divisor of 1 + a = {}", 1 + a)));
        }
        let c = -(1 + a) / b;
        let m = IntMatrix::from_i64_rows(&[&[0, 0, -1, 0], &[1, 0, 0, 0], &[0, 1, 1, b], &[0, 0, c, -1]]);
        Self::with_nonreal_pairing(m, pairing, Provenance::DegreeSix { a, b })
    }

    fn with_nonreal_pairing(
        m: IntMatrix,
        (i, j): (usize, usize),
        provenance: Provenance,
    ) -> Result<TorusModel, TorusError> {
        let p = m.charpoly();
        let chain = SturmChain::for_distinct_roots(&p).expect("nonzero");
        if chain.count_all() > 0 {
            return Err(TorusError::RealRoots);
        }
        if !p.is_squarefree() {
            return Err(TorusError::RepeatedRoots);
        }
        let roots = isolate_all_roots(&p)?;
        let partner = |k: usize| roots.boxes()[k].conjugate_partner;
        if i >= 4 || j >= 4 || i == j || partner(i) == Some(j) {
            return Err(TorusError::BadPairing);
        }
        Ok(Self::assemble(m, roots, (i, j), provenance))
    }

    /// Automorphism of E x E from a unimodular matrix over Z[√−D], lifted to
    /// Z^4 on the basis (1, √−D) of each factor. γ1 and γ2 are the two
    /// eigenvalues of the complex 2x2 matrix under √−D ↦ i√D.
    pub fn quad_order_model(q: &QuadOrderMatrix) -> Result<TorusModel, TorusError> {
        Self::quad_order_with(q, Provenance::QuadOrder { matrix: q.clone() })
    }

    fn quad_order_with(q: &QuadOrderMatrix, provenance: Provenance) -> Result<TorusModel, TorusError> {
        if !q.has_positive_d() {
            return Err(TorusError::BadParameters("D must be positive".into()));
        }
        if !q.is_unimodular() {
            return Err(TorusError::NotUnit);
        }
        let m = q.lift();
        let p = m.charpoly();
        let roots = isolate_all_roots(&p.squarefree_part())?;
        let pairing = complex_eigenvalues(q, &roots)?;
        let pairing = order_by_modulus(&roots, pairing)?;
        Ok(Self::assemble(m, roots, pairing, provenance))
    }

    /// Two copies of the block [[0, -det], [1, r]]. The pairing takes both
    /// real roots of t^2 - rt + det, the larger in absolute value first.
    pub fn gl2z_model(r: i64, det: i64) -> Result<TorusModel, TorusError> {
        if det != 1 && det != -1 {
            return Err(TorusError::BadParameters(format!("det = {det} must be 1 or -1")));
        }
        if (det == 1 && r.abs() <= 2) || (det == -1 && r == 0) {
            return Err(TorusError::NotHyperbolic);
        }
        let block = IntMatrix::from_i64_rows(&[&[0, -det], &[1, r]]);
        let m = IntMatrix::block_diag(&[block.clone(), block]);
        let roots = isolate_all_roots(&IntPoly::from_desc(&[1, -r, det]))?;
        let pairing = order_by_modulus(&roots, (0, 1))?;
        Ok(Self::assemble(m, roots, pairing, Provenance::Gl2z { r, det }))
    }

    /// Automorphism of E x E with E = C/Z[2^k i] given by
    /// [[0, -1], [1, 1 + 2^(n-k) √−4^k]]; its Salem factor is
    /// t^4 - (1+4^n)t^3 - 2^(2n+1)t^2 - (1+4^n)t + 1 for every k.
    pub fn power_of_two_family(n: u32, k: u32) -> Result<TorusModel, TorusError> {
        if n == 0 || k > n {
            return Err(TorusError::BadParameters(format!("need 1 <= n and k <= n, got n = {n}, k = {k}")));
        }
        let d = BigInt::one() << (2 * k);
        let b2 = BigInt::one() << (n - k);
        let matrix = QuadOrderMatrix::companion_shape(d, BigInt::one(), b2);
        Self::quad_order_with(&matrix.clone(), Provenance::PowerOfTwo { n, k, matrix })
    }

    pub fn m_matrix(&self) -> &IntMatrix {
        &self.m_matrix
    }

    pub fn p_charpoly(&self) -> &IntPoly {
        &self.p_charpoly
    }

    pub fn q_charpoly(&self) -> &IntPoly {
        &self.q_charpoly
    }

    /// Isolated distinct roots of p_charpoly.
    pub fn roots(&self) -> &RootSet {
        &self.roots
    }

    pub fn pairing_indices(&self) -> (usize, usize) {
        self.pairing
    }

    pub fn pairing(&self) -> (&RootBox, &RootBox) {
        let b = self.roots.boxes();
        (&b[self.pairing.0], &b[self.pairing.1])
    }

    pub fn h20_product(&self) -> &ComplexBox {
        &self.h20_product
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn is_reoriented(&self) -> bool {
        self.reoriented
    }

    /// Set when the last reorientation left a real pairing unchanged.
    pub fn reorient_was_noop(&self) -> bool {
        self.reorient_noop
    }

    /// Box around γ1γ2 of side at most `width`.
    pub fn h20_enclosure(&self, width: &BigRational) -> Result<ComplexBox, TorusError> {
        let mut w = width / int(8);
        loop {
            let fine = self.roots.refine(&w)?;
            let b = fine.boxes();
            let h = b[self.pairing.0].as_complex().mul(&b[self.pairing.1].as_complex());
            if &h.width() <= width {
                return Ok(h);
            }
            w /= int(16);
        }
    }

    /// Squarefree part of q_charpoly with a Sturm chain, when it has a
    /// root above 1.
    fn expanding_part(&self) -> Option<(IntPoly, SturmChain)> {
        let q = self.q_charpoly.squarefree_part();
        let chain = SturmChain::new(&q).expect("squarefree");
        let above = chain.count(&Bound::int(1), &Bound::PosInf).unwrap();
        (above > 0).then_some((q, chain))
    }

    pub fn has_positive_entropy(&self) -> bool {
        self.expanding_part().is_some()
    }

    /// Certified interval of width at most eps around log max(|γ1|^2, |γ2|^2),
    /// the log of the largest real root of q_charpoly. Exactly [0, 0] when no
    /// root of q_charpoly exceeds 1.
    pub fn entropy(&self, eps: &BigRational) -> Interval {
        assert!(eps.is_positive(), "eps must be positive");
        let Some((q, chain)) = self.expanding_part() else {
            return Interval::point(BigRational::zero());
        };
        let half = eps / int(2);
        let mut lo = int(1);
        let mut hi = int(1) + BigRational::from_integer(q.max_abs_coeff());
        // the largest root lies in (lo, hi]
        while &hi - &lo > half {
            let mid = (&lo + &hi) / int(2);
            if chain.count(&Bound::Finite(mid.clone()), &Bound::Finite(hi.clone())).unwrap() > 0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let tol = eps / int(4);
        let ln_lo = if lo.is_one() { BigRational::zero() } else { ln_interval(&lo, &tol).lo };
        Interval::new(ln_lo, ln_interval(&hi, &tol).hi)
    }

    /// The Salem factor of q_charpoly, if any.
    pub fn salem_factor(&self) -> Option<SalemCertificate> {
        if !self.has_positive_entropy() {
            return None;
        }
        factor_bounded(&self.q_charpoly)
            .ok()?
            .iter()
            .find_map(|(f, _)| is_salem(f).ok())
    }

    /// The irreducible factor of q_charpoly having γ1γ2 as a root.
    ///
    /// Roots of every factor are refined below a sixth of the separation
    /// bound of their product, as is the box around γ1γ2; only the box of
    /// γ1γ2 itself can then meet it.
    pub fn h20_factor(&self) -> Result<IntPoly, TorusError> {
        let factors: Vec<IntPoly> = factor_bounded(&self.q_charpoly)?.into_iter().map(|(f, _)| f).collect();
        if factors.len() == 1 {
            return Ok(factors[0].clone());
        }
        let union = factors.iter().fold(IntPoly::one(), |acc, f| &acc * f);
        let target = root_separation_bound(&union)? / int(6);
        let h = self.h20_enclosure(&target)?;
        let mut hits = Vec::new();
        for f in &factors {
            let roots = isolate_all_roots(f)?.refine(&target)?;
            if roots.boxes().iter().any(|b| b.as_complex().intersects(&h)) {
                hits.push(f.clone());
            }
        }
        assert_eq!(hits.len(), 1, "γ1γ2 must be a root of exactly one factor");
        Ok(hits.pop().unwrap())
    }

    /// True iff γ1γ2 is a root of the cyclotomic complement C of the Salem
    /// factor S in q_charpoly, false iff it is a root of S.
    pub fn is_projective(&self) -> Result<bool, TorusError> {
        let s = self.salem_factor().ok_or(TorusError::ZeroEntropy)?;
        Ok(self.h20_factor()? != s.s_poly)
    }

    /// Replaces γ2 by its complex conjugate. Real γ2 is fixed, so such a
    /// model comes back unchanged apart from the flags.
    pub fn reorient(&self) -> Result<TorusModel, TorusError> {
        if !self.has_positive_entropy() {
            return Err(TorusError::ZeroEntropy);
        }
        let (i, j) = self.pairing;
        let mut out = self.clone();
        out.reoriented = !self.reoriented;
        match self.roots.boxes()[j].conjugate_partner {
            Some(jc) => {
                let b = self.roots.boxes();
                out.pairing = (i, jc);
                out.h20_product = b[i].as_complex().mul(&b[jc].as_complex());
                out.reorient_noop = false;
            }
            None => out.reorient_noop = true,
        }
        Ok(out)
    }

    /// Picard rank forced by the Salem degree and projectivity.
    pub fn picard_rank(&self) -> Result<PicardRank, TorusError> {
        let s = self.salem_factor().ok_or(TorusError::ZeroEntropy)?;
        Ok(match s.degree {
            6 => PicardRank::Zero,
            4 => {
                if self.is_projective()? {
                    PicardRank::Four
                } else {
                    PicardRank::Two
                }
            }
            _ => {
                let q = -s.s_poly.coeff(1);
                if square_witness(&q).is_some() {
                    PicardRank::Unconstrained
                } else {
                    PicardRank::Four
                }
            }
        })
    }

    /// Characteristic polynomial on NS. For unreoriented quad-order models
    /// of shape [[0, -1], [1, b1 + b2√−D]] this is
    /// t^4 - (b1^2 + b2^2 D)t^3 + (2b1^2 - 2b2^2 D - 2)t^2 - (b1^2 + b2^2 D)t + 1;
    /// other projective quad-order models and projective models with a
    /// quadratic Salem factor and no square shift give q_charpoly divided by
    /// the factor carrying γ1γ2 and its conjugate.
    pub fn ns_charpoly(&self) -> Result<NsCharpoly, TorusError> {
        let s = self.salem_factor().ok_or(TorusError::ZeroEntropy)?;
        if !self.is_projective()? {
            return Ok(NsCharpoly::NotForced);
        }
        if let (Some(q), false) = (self.provenance.quad_order(), self.reoriented) {
            if let Some((b1, b2)) = q.companion_parameters() {
                let e = &b1 * &b1 + &b2 * &b2 * &q.d;
                let mid = BigInt::from(2) * (&b1 * &b1 - &b2 * &b2 * &q.d) - 2;
                let one = BigInt::one();
                let ns = IntPoly::new(vec![one.clone(), -&e, mid, -&e, one]);
                return Ok(NsCharpoly::Forced(ns));
            }
            return Ok(NsCharpoly::Forced(self.divide_out_h20()?));
        }
        if s.degree == 2 && square_witness(&-s.s_poly.coeff(1)).is_none() {
            return Ok(NsCharpoly::Forced(self.divide_out_h20()?));
        }
        Ok(NsCharpoly::NotForced)
    }

    /// q_charpoly divided by the real quadratic vanishing at γ1γ2 and its
    /// conjugate.
    fn divide_out_h20(&self) -> Result<IntPoly, TorusError> {
        let f = self.h20_factor()?;
        let quadratic = match f.deg() {
            1 => f.pow(2),
            2 => f,
            _ => return Err(TorusError::BadParameters("γ1γ2 has degree above 2".into())),
        };
        Ok(self.q_charpoly.div_exact(&quadratic)?)
    }
}

fn check_quartic(p: &IntPoly) -> Result<(), TorusError> {
    if p.deg() != 4 {
        return Err(TorusError::WrongDegree(p.deg()));
    }
    if !p.is_monic() {
        return Err(TorusError::NotMonic);
    }
    if !p.coeff(0).is_one() {
        return Err(TorusError::ConstantTermNotOne);
    }
    Ok(())
}

/// Indices in `roots` of the eigenvalues of the complex 2x2 matrix: the
/// roots z with z^2 - τz + δ = 0, τ and δ the trace and determinant.
fn complex_eigenvalues(q: &QuadOrderMatrix, roots: &RootSet) -> Result<(usize, usize), TorusError> {
    let (tau, delta) = (q.trace(), q.det());
    let disc = tau.mul(&tau, &q.d).sub(&delta.mul(&QuadInt::from_i64(4, 0), &q.d));
    let distinct = if disc == QuadInt::zero() { 1 } else { 2 };
    let mut bits = 32;
    loop {
        let fine = roots.refine(&pow2_inv(bits))?;
        let sqrt_d = crate::numeric::sqrt_interval(&BigRational::from_integer(q.d.clone()), bits + 16);
        let (tau_b, delta_b) = (tau.to_box(&sqrt_d), delta.to_box(&sqrt_d));
        let hits: Vec<usize> = (0..fine.len())
            .filter(|&k| {
                let z = fine.boxes()[k].as_complex();
                z.mul(&z).sub(&tau_b.mul(&z)).add(&delta_b).contains_zero()
            })
            .collect();
        if hits.len() == distinct {
            return Ok((hits[0], hits[distinct - 1]));
        }
        bits *= 2;
    }
}

/// Orders an index pair so the root of larger modulus comes first, falling
/// back to index order when the moduli cannot be separated at 2^-64.
fn order_by_modulus(roots: &RootSet, (i, j): (usize, usize)) -> Result<(usize, usize), TorusError> {
    if i == j {
        return Ok((i, j));
    }
    let fine = roots.refine(&pow2_inv(64))?;
    let abs2 = |k: usize| fine.boxes()[k].as_complex().abs2();
    Ok(match cmp_intervals(&abs2(i), &abs2(j)) {
        Some(Ordering::Less) => (j, i),
        Some(Ordering::Greater) => (i, j),
        _ => (i.min(j), i.max(j)),
    })
}

#[cfg(test)]
mod tests;
