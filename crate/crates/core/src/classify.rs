//! Case classification, realizability and finiteness for Salem numbers as
//! entropies of automorphisms of two-dimensional complex tori.
//!
//! For an automorphism with positive entropy log λ, the action on H^2 has
//! characteristic polynomial Q = S·C with S the Salem polynomial of λ and C
//! a product of cyclotomic factors, and Q is the exterior square of the
//! quartic P on H^1. Realizability searches all such (Q, C, P).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::numeric::serde_big;
use crate::poly::{cmp_poly, IntPoly};
use crate::salem::{is_salem, NotSalem, SalemCertificate, SturmChain};
use crate::torus::{PicardRank, TorusError, TorusModel};
use crate::wedge::{exterior_square, invert_wedge, square_values};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("not a Salem polynomial: {0}")]
    NotSalemInput(NotSalem),
    #[error("Salem degree {0} is not the degree of an H^2 factor of a torus (2, 4 or 6)")]
    UnsupportedDegree(usize),
    #[error("no torus automorphism has this entropy")]
    NotRealizable,
    #[error(transparent)]
    Torus(#[from] TorusError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    /// Degree 6: only non-projective tori.
    Case1,
    /// Degree 4: both abelian surfaces and non-projective tori.
    Case2,
    /// Degree 2 with λ + 1/λ ± 2 a square.
    Case3a,
    /// Degree 2 otherwise: products of isogenous CM elliptic curves.
    Case3b,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Case1 => "1",
            CaseTag::Case2 => "2",
            CaseTag::Case3a => "3a",
            CaseTag::Case3b => "3b",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for CaseTag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Projectivity {
    Projective,
    NonProjective,
}

impl Projectivity {
    pub fn from_bool(projective: bool) -> Self {
        if projective {
            Projectivity::Projective
        } else {
            Projectivity::NonProjective
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Projectivity::Projective => "projective",
            Projectivity::NonProjective => "non_projective",
        }
    }
}

/// Which shift of q = λ + 1/λ is a square.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ShiftSign {
    /// q + 2 = r^2, so r = √λ + 1/√λ.
    #[serde(rename = "+")]
    Plus,
    /// q - 2 = r^2, so r = √λ - 1/√λ.
    #[serde(rename = "-")]
    Minus,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SquareWitness {
    #[serde(serialize_with = "serde_big::int")]
    pub r: BigInt,
    pub sign: ShiftSign,
}

/// r >= 0 with q + 2 = r^2 or q - 2 = r^2. Both cannot hold for q > 2.
pub fn square_witness(q: &BigInt) -> Option<SquareWitness> {
    let is_square = |v: BigInt| {
        if v.is_negative() {
            return None;
        }
        let r = v.sqrt();
        (&r * &r == v).then_some(r)
    };
    if let Some(r) = is_square(q + 2) {
        return Some(SquareWitness { r, sign: ShiftSign::Plus });
    }
    is_square(q - 2).map(|r| SquareWitness { r, sign: ShiftSign::Minus })
}

/// Integer roots of a monic polynomial, ascending.
fn integer_roots(t: &IntPoly) -> Vec<BigInt> {
    let mut shift = 0;
    while t.coeff(shift).is_zero() {
        shift += 1;
    }
    let mut roots: Vec<BigInt> = if shift > 0 { vec![BigInt::zero()] } else { Vec::new() };
    let c0 = t.coeff(shift).abs();
    let mut k = BigInt::from(1);
    while &k * &k <= c0 {
        if (&c0 % &k).is_zero() {
            for d in [k.clone(), &c0 / &k] {
                for cand in [d.clone(), -d] {
                    if t.eval_int(&cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
        k += 1;
    }
    roots.sort();
    roots
}

/// Square test on λ + 1/λ ± 2 for any degree. √λ ± 1/√λ is an integer x > 0
/// exactly when the trace polynomial T has the integer root u = x^2 ∓ 2,
/// i.e. when T(x^2 ∓ 2) has a positive integer root. T is irreducible, so
/// this only fires in degree 2, where T = t - q and it is the literal test
/// on q.
pub fn shifted_square(cert: &SalemCertificate) -> Option<SquareWitness> {
    integer_roots(&cert.trace_poly)
        .into_iter()
        .filter(|u| u > &BigInt::from(2))
        .find_map(|u| square_witness(&u))
}

/// Complete or partial classification of a Salem number.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub salem: SalemCertificate,
    pub case_tag: CaseTag,
    /// λ + 1/λ, for degree 2.
    #[serde(serialize_with = "serde_big::opt_int")]
    pub q_value: Option<BigInt>,
    pub square_witness: Option<SquareWitness>,
    pub projective_types: Vec<Projectivity>,
    pub picard_ranks: BTreeMap<Projectivity, PicardRank>,
    pub finiteness: Option<Finiteness>,
    /// `None` until the realizability search has run.
    pub witnesses: Option<Vec<Witness>>,
}

/// Case, projectivity types and forced Picard ranks.
pub fn case_of(cert: &SalemCertificate) -> Result<ClassificationReport, ClassifyError> {
    use Projectivity::*;
    let (case_tag, q_value, witness) = match cert.degree {
        6 => (CaseTag::Case1, None, None),
        4 => (CaseTag::Case2, None, None),
        2 => {
            let q = -cert.s_poly.coeff(1);
            let w = square_witness(&q);
            let tag = if w.is_some() { CaseTag::Case3a } else { CaseTag::Case3b };
            (tag, Some(q), w)
        }
        d => return Err(ClassifyError::UnsupportedDegree(d)),
    };
    let picard_ranks: BTreeMap<Projectivity, PicardRank> = match case_tag {
        CaseTag::Case1 => [(NonProjective, PicardRank::Zero)].into(),
        CaseTag::Case2 => [(NonProjective, PicardRank::Two), (Projective, PicardRank::Four)].into(),
        CaseTag::Case3a => [(Projective, PicardRank::Unconstrained)].into(),
        CaseTag::Case3b => [(Projective, PicardRank::Four)].into(),
    };
    Ok(ClassificationReport {
        salem: cert.clone(),
        case_tag,
        q_value,
        square_witness: witness,
        projective_types: picard_ranks.keys().copied().collect(),
        picard_ranks,
        finiteness: None,
        witnesses: None,
    })
}

/// Quadratic t^2 + jt + 1.
fn palindromic_quadratic(j: i64) -> IntPoly {
    IntPoly::from_desc(&[1, j, 1])
}

/// Irreducible quartics whose roots are roots of unity: Φ5, Φ8, Φ10, Φ12.
pub fn cyclotomic_quartics() -> [IntPoly; 4] {
    [
        IntPoly::from_desc(&[1, 1, 1, 1, 1]),
        IntPoly::from_desc(&[1, 0, 0, 0, 1]),
        IntPoly::from_desc(&[1, -1, 1, -1, 1]),
        IntPoly::from_desc(&[1, 0, -1, 0, 1]),
    ]
}

/// Reciprocal products of cyclotomic factors of the given degree with all
/// quadratic coefficients in -2..=2.
pub fn complements_of_degree(degree: usize) -> Vec<IntPoly> {
    match degree {
        0 => vec![IntPoly::one()],
        2 => (-2..=2).map(palindromic_quadratic).collect(),
        4 => {
            let mut out = Vec::new();
            for j in -2..=2 {
                for k in j..=2 {
                    out.push(&palindromic_quadratic(j) * &palindromic_quadratic(k));
                }
            }
            out.extend(cyclotomic_quartics());
            out
        }
        _ => Vec::new(),
    }
}

/// A complement C with Q = S·C passing the square-value test.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdmissibleQ {
    pub c_poly: IntPoly,
    pub q_poly: IntPoly,
    #[serde(serialize_with = "serde_big::int")]
    pub m: BigInt,
    #[serde(serialize_with = "serde_big::int")]
    pub n: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CandidateSet {
    pub s_poly: IntPoly,
    pub complements: Vec<IntPoly>,
    pub admissible_q: Vec<AdmissibleQ>,
}

pub fn enumerate_complements(cert: &SalemCertificate) -> CandidateSet {
    let complements = complements_of_degree(6usize.saturating_sub(cert.degree));
    let admissible_q = complements
        .iter()
        .filter_map(|c| {
            let q = &cert.s_poly * c;
            let (m, n) = square_values(&q).ok()?;
            Some(AdmissibleQ { c_poly: c.clone(), q_poly: q, m, n })
        })
        .collect();
    CandidateSet {
        s_poly: cert.s_poly.clone(),
        complements,
        admissible_q,
    }
}

/// One complex structure on a witness P up to global conjugation, with a
/// model realizing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairingClass {
    /// Root indices of (γ1, γ2) in the model's root order.
    pub pairing: [usize; 2],
    pub projectivity: Projectivity,
    pub model: ModelSpec,
}

/// Constructor call reproducing a model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum ModelSpec {
    Quartic { poly: IntPoly, pairing: [usize; 2] },
    Gl2z { r: i64, det: i64 },
}

impl ModelSpec {
    pub fn build(&self) -> Result<TorusModel, TorusError> {
        match self {
            ModelSpec::Quartic { poly, pairing } => TorusModel::from_quartic(poly, (pairing[0], pairing[1])),
            ModelSpec::Gl2z { r, det } => TorusModel::gl2z_model(*r, *det),
        }
    }
}

impl fmt::Display for ModelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModelSpec::Quartic { poly, pairing } => write!(
                f,
                "quartic({};{},{})",
                crate::poly::print_poly(poly),
                pairing[0],
                pairing[1]
            ),
            ModelSpec::Gl2z { r, det } => write!(f, "gl2z(r={r};det={det})"),
        }
    }
}

/// A realizing triple (Q, C, P) with its complex structures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub q_poly: IntPoly,
    pub c_poly: IntPoly,
    pub p_poly: IntPoly,
    pub classes: Vec<PairingClass>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Finiteness {
    /// Finitely many tori; the number of (Q, P, pairing class) quartets.
    Finite { count: usize },
    /// A positive-dimensional family exists.
    InfiniteFamily {
        #[serde(flatten)]
        witness: SquareWitness,
    },
}

impl fmt::Display for Finiteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finiteness::Finite { count } => write!(f, "finite({count})"),
            Finiteness::InfiniteFamily { witness } => {
                let s = match witness.sign {
                    ShiftSign::Plus => "+",
                    ShiftSign::Minus => "-",
                };
                write!(f, "infinite_family(r={};{s})", witness.r)
            }
        }
    }
}

/// Complex structures carried by a quartic P with exterior square Q = S·C.
/// Non-real P with distinct roots gives two classes, (α, β) and (α, β̄);
/// |αβ| = 1 holds automatically since |α|^2 |β|^2 = P(0) = 1. Real P only
/// occurs for quadratic S with a square shift, as R^2 with
/// R = t^2 - rt + δ and r^2 - 2δ = λ + 1/λ; then γ1, γ2 are the roots of R.
fn pairing_classes(p: &IntPoly, cert: &SalemCertificate) -> Result<Vec<PairingClass>, ClassifyError> {
    let real_roots = SturmChain::for_distinct_roots(p).expect("nonzero").count_all();
    if real_roots == 0 {
        if !p.is_squarefree() {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        for pairing in [[0, 2], [0, 3]] {
            let model = TorusModel::from_quartic(p, (pairing[0], pairing[1]))?;
            out.push(PairingClass {
                pairing,
                projectivity: Projectivity::from_bool(model.is_projective()?),
                model: ModelSpec::Quartic { poly: p.clone(), pairing },
            });
        }
        return Ok(out);
    }
    if cert.degree != 2 {
        return Ok(Vec::new());
    }
    let Some((r, det)) = real_square_root(p, cert) else {
        return Ok(Vec::new());
    };
    let model = TorusModel::gl2z_model(r, det)?;
    Ok(vec![PairingClass {
        pairing: [model.pairing_indices().0, model.pairing_indices().1],
        projectivity: Projectivity::from_bool(model.is_projective()?),
        model: ModelSpec::Gl2z { r, det },
    }])
}

/// (r, δ) with p = (t^2 - rt + δ)^2, δ = ±1, real roots, and
/// t^2 - (r^2 - 2δ)t + 1 = S.
fn real_square_root(p: &IntPoly, cert: &SalemCertificate) -> Option<(i64, i64)> {
    use num_traits::ToPrimitive;
    // (t^2 - rt + δ)^2 = t^4 - 2r t^3 + (r^2 + 2δ) t^2 - 2rδ t + 1
    let c3 = p.coeff(3);
    if !(&c3 % BigInt::from(2)).is_zero() {
        return None;
    }
    let r = (-c3 / BigInt::from(2)).to_i64()?;
    [1i64, -1].into_iter().find_map(|det| {
        let rr = IntPoly::from_desc(&[1, -r, det]);
        let disc = r * r - 4 * det;
        let s = IntPoly::from_desc(&[1, -(r * r - 2 * det), 1]);
        (rr.pow(2) == *p && disc > 0 && s == cert.s_poly).then_some((r, det))
    })
}

fn certify(s: &IntPoly) -> Result<SalemCertificate, ClassifyError> {
    is_salem(s).map_err(ClassifyError::NotSalemInput)
}

/// Full report: case data plus every witness (Q, C, P) and the finiteness
/// verdict when realizable.
pub fn realizable(s: &IntPoly) -> Result<ClassificationReport, ClassifyError> {
    let cert = certify(s)?;
    let mut report = case_of(&cert)?;
    let candidates = enumerate_complements(&cert);
    let mut witnesses = Vec::new();
    for adm in &candidates.admissible_q {
        let inversion = invert_wedge(&adm.q_poly).expect("sextic from admissible list");
        for p in &inversion.verified {
            debug_assert_eq!(exterior_square(p).as_ref(), Ok(&adm.q_poly));
            let classes = pairing_classes(p, &cert)?;
            if !classes.is_empty() {
                witnesses.push(Witness {
                    q_poly: adm.q_poly.clone(),
                    c_poly: adm.c_poly.clone(),
                    p_poly: p.clone(),
                    classes,
                });
            }
        }
    }
    witnesses.sort_by(|a, b| cmp_poly(&a.q_poly, &b.q_poly).then_with(|| cmp_poly(&a.p_poly, &b.p_poly)));
    report.finiteness = finiteness_from(&cert, &witnesses);
    report.witnesses = Some(witnesses);
    Ok(report)
}

fn finiteness_from(cert: &SalemCertificate, witnesses: &[Witness]) -> Option<Finiteness> {
    if witnesses.is_empty() {
        return None;
    }
    Some(match shifted_square(cert) {
        Some(witness) => Finiteness::InfiniteFamily { witness },
        None => Finiteness::Finite {
            count: witnesses.iter().map(|w| w.classes.len()).sum(),
        },
    })
}

/// Finite with the quartet count, or the square shift giving a family.
pub fn finiteness(s: &IntPoly) -> Result<Finiteness, ClassifyError> {
    realizable(s)?.finiteness.ok_or(ClassifyError::NotRealizable)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(desc: &[i64]) -> IntPoly {
        IntPoly::from_desc(desc)
    }

    fn cert(desc: &[i64]) -> SalemCertificate {
        is_salem(&p(desc)).unwrap()
    }

    #[test]
    fn square_witness_examples() {
        assert_eq!(square_witness(&3.into()), Some(SquareWitness { r: 1.into(), sign: ShiftSign::Minus }));
        assert_eq!(square_witness(&7.into()), Some(SquareWitness { r: 3.into(), sign: ShiftSign::Plus }));
        assert_eq!(square_witness(&4.into()), None);
        assert_eq!(square_witness(&6.into()), Some(SquareWitness { r: 2.into(), sign: ShiftSign::Minus }));
    }

    #[test]
    fn integer_roots_by_divisors() {
        let t = &(&p(&[1, -3]) * &p(&[1, 4])) * &p(&[1, 0, 1]);
        assert_eq!(integer_roots(&t), vec![BigInt::from(-4), BigInt::from(3)]);
        assert_eq!(integer_roots(&p(&[1, -2, 0])), vec![BigInt::zero(), BigInt::from(2)]);
    }

    #[test]
    fn case_table() {
        let r = case_of(&cert(&[1, -3, 1])).unwrap();
        assert_eq!(r.case_tag, CaseTag::Case3a);
        assert_eq!(r.q_value, Some(3.into()));
        assert_eq!(r.projective_types, vec![Projectivity::Projective]);
        let r = case_of(&cert(&[1, -4, 1])).unwrap();
        assert_eq!(r.case_tag, CaseTag::Case3b);
        assert_eq!(r.picard_ranks[&Projectivity::Projective], PicardRank::Four);
        let r = case_of(&cert(&[1, 0, -1, -1, -1, 0, 1])).unwrap();
        assert_eq!(r.case_tag, CaseTag::Case1);
        assert_eq!(r.projective_types, vec![Projectivity::NonProjective]);
        assert_eq!(r.picard_ranks[&Projectivity::NonProjective], PicardRank::Zero);
        let r = case_of(&cert(&[1, -2, -2, -2, 1])).unwrap();
        assert_eq!(r.case_tag, CaseTag::Case2);
        assert_eq!(r.projective_types.len(), 2);
    }

    #[test]
    fn complement_counts() {
        assert_eq!(complements_of_degree(0), vec![IntPoly::one()]);
        assert_eq!(complements_of_degree(2).len(), 5);
        assert_eq!(complements_of_degree(4).len(), 19);
        for c in complements_of_degree(4) {
            assert!(c.is_reciprocal() && c.is_monic());
            assert_eq!(crate::poly::cyclotomic_part(&c).unwrap().1, IntPoly::one());
        }
    }

    #[test]
    fn complement_examples() {
        let set = enumerate_complements(&cert(&[1, 0, -1, -1, -1, 0, 1]));
        assert_eq!(set.complements, vec![IntPoly::one()]);
        assert_eq!(set.admissible_q.len(), 1);
        let set = enumerate_complements(&cert(&[1, -2, -2, -2, 1]));
        assert_eq!(set.complements.len(), 5);
        let minus_two = set.admissible_q.iter().find(|a| a.c_poly == p(&[1, -2, 1])).unwrap();
        assert_eq!((minus_two.m.clone(), minus_two.n.clone()), (0.into(), 4.into()));
    }

    #[test]
    fn sextic_witness() {
        let report = realizable(&p(&[1, 0, -1, -1, -1, 0, 1])).unwrap();
        let w = report.witnesses.unwrap();
        assert!(w.iter().any(|w| w.p_poly == p(&[1, 0, 0, 1, 1]) && w.c_poly == IntPoly::one()));
        for w in &w {
            for c in &w.classes {
                assert_eq!(c.projectivity, Projectivity::NonProjective);
            }
        }
        assert!(matches!(report.finiteness, Some(Finiteness::Finite { count }) if count >= 1));
    }

    #[test]
    fn quadratic_with_square_shift() {
        let report = realizable(&p(&[1, -3, 1])).unwrap();
        let w = report.witnesses.unwrap();
        assert!(w.iter().any(|w| SturmChain::for_distinct_roots(&w.p_poly).unwrap().count_all() > 0));
        assert_eq!(
            report.finiteness,
            Some(Finiteness::InfiniteFamily { witness: SquareWitness { r: 1.into(), sign: ShiftSign::Minus } })
        );
    }

    #[test]
    fn not_salem_input() {
        assert!(matches!(
            realizable(&p(&[1, -1, -4, -1, 1])),
            Err(ClassifyError::NotSalemInput(NotSalem::Reducible { .. }))
        ));
    }
}
