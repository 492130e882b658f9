use super::*;
use crate::numeric::{ln_interval, rat, to_f64};
use crate::salem::{lambda_approx, log_lambda};

fn p(desc: &[i64]) -> IntPoly {
    IntPoly::from_desc(desc)
}

fn gaussian_d1(b1: i64, b2: i64) -> TorusModel {
    TorusModel::quad_order_model(&QuadOrderMatrix::companion_shape(1.into(), b1.into(), b2.into())).unwrap()
}

#[test]
fn quartic_model_sextic_family() {
    let m = TorusModel::from_quartic(&p(&[1, 0, 0, 1, 1]), (0, 2)).unwrap();
    assert_eq!(m.q_charpoly(), &p(&[1, 0, -1, -1, -1, 0, 1]));
    assert_eq!(m.m_matrix().charpoly(), *m.p_charpoly());
    assert_eq!(m.picard_rank(), Ok(PicardRank::Zero));
    assert_eq!(m.is_projective(), Ok(false));
    let e = m.entropy(&rat(1, 1_000_000));
    let lam = crate::numeric::from_f64(1.401_268_367_939_85);
    let want = ln_interval(&lam, &rat(1, 1_000_000_000));
    assert!(e.width() <= rat(1, 1_000_000));
    assert!((to_f64(&e.midpoint()) - to_f64(&want.midpoint())).abs() < 1e-6);
}

#[test]
fn quartic_model_errors() {
    assert_eq!(
        TorusModel::from_quartic(&p(&[1, -5, 5, -5, 1]), (0, 2)).unwrap_err(),
        TorusError::RealRoots
    );
    assert_eq!(TorusModel::from_quartic(&p(&[1, 0, 1]), (0, 1)).unwrap_err(), TorusError::WrongDegree(2));
    assert_eq!(
        TorusModel::from_quartic(&p(&[1, 0, 0, 1, 1]), (0, 1)).unwrap_err(),
        TorusError::BadPairing
    );
    assert_eq!(
        TorusModel::from_quartic(&p(&[1, 0, 0, 1, 2]), (0, 2)).unwrap_err(),
        TorusError::ConstantTermNotOne
    );
    assert_eq!(
        TorusModel::from_quartic(&p(&[1, 0, 1]).pow(2), (0, 2)).unwrap_err(),
        TorusError::RepeatedRoots
    );
}

#[test]
fn quartic_model_with_cyclotomic_complement() {
    let m = TorusModel::from_quartic(&p(&[1, -2, 4, -2, 1]), (0, 2)).unwrap();
    assert_eq!(m.q_charpoly(), &(&p(&[1, -1]).pow(2) * &p(&[1, -2, -2, -2, 1])));
}

#[test]
fn gaussian_model() {
    let m = gaussian_d1(1, 1);
    assert_eq!(m.p_charpoly(), &p(&[1, -2, 4, -2, 1]));
    assert!(m.h20_product().contains(&crate::numeric::QComplex::from_real(crate::numeric::int(1))));
    assert_eq!(m.is_projective(), Ok(true));
    assert_eq!(m.picard_rank(), Ok(PicardRank::Four));
    assert_eq!(m.ns_charpoly(), Ok(NsCharpoly::Forced(p(&[1, -2, -2, -2, 1]))));
    let r = m.reorient().unwrap();
    assert!(!r.h20_product().contains(&crate::numeric::QComplex::from_real(crate::numeric::int(1))));
    assert_eq!(r.is_projective(), Ok(false));
    assert_eq!(r.picard_rank(), Ok(PicardRank::Two));
    assert_eq!(r.ns_charpoly(), Ok(NsCharpoly::NotForced));
    let rr = r.reorient().unwrap();
    assert_eq!(rr.pairing_indices(), m.pairing_indices());
    assert!(!rr.is_reoriented());
}

#[test]
fn ns_formula_matches_division() {
    for d in 1..=5i64 {
        for b1 in -3..=3i64 {
            for b2 in -3..=3i64 {
                let q = QuadOrderMatrix::companion_shape(d.into(), b1.into(), b2.into());
                let m = TorusModel::quad_order_model(&q).unwrap();
                let Ok(NsCharpoly::Forced(ns)) = m.ns_charpoly() else {
                    continue;
                };
                let h = m.q_charpoly().div_exact(&ns).expect("formula divides q");
                assert_eq!(h.deg(), 2);
                assert!(h.is_reciprocal());
            }
        }
    }
}

#[test]
fn ns_excluded_quartic() {
    let m = gaussian_d1(0, 1);
    assert_eq!(m.ns_charpoly(), Ok(NsCharpoly::Forced(p(&[1, -1, -4, -1, 1]))));
}

#[test]
fn sqrt_minus_two_model() {
    let q = QuadOrderMatrix::from_i64(2, [[(0, 0), (-1, 0)], [(1, 0), (0, 1)]]);
    let m = TorusModel::quad_order_model(&q).unwrap();
    assert_eq!(m.p_charpoly(), &p(&[1, 0, 4, 0, 1]));
    let e = m.entropy(&rat(1, 1_000_000_000));
    let want = (2.0f64 + 3f64.sqrt()).ln();
    assert!(e.contains(&crate::numeric::from_f64(want)) || (to_f64(&e.midpoint()) - want).abs() < 1e-9);
}

#[test]
fn identity_model_has_zero_entropy() {
    let q = QuadOrderMatrix::from_i64(1, [[(1, 0), (0, 0)], [(0, 0), (1, 0)]]);
    let m = TorusModel::quad_order_model(&q).unwrap();
    assert_eq!(m.entropy(&rat(1, 1000)), Interval::point(crate::numeric::int(0)));
    assert_eq!(m.reorient().unwrap_err(), TorusError::ZeroEntropy);
    assert_eq!(m.is_projective(), Err(TorusError::ZeroEntropy));
    assert_eq!(m.picard_rank(), Err(TorusError::ZeroEntropy));
    let bad = QuadOrderMatrix::from_i64(1, [[(2, 0), (0, 0)], [(0, 0), (1, 0)]]);
    assert_eq!(TorusModel::quad_order_model(&bad).unwrap_err(), TorusError::NotUnit);
}

#[test]
fn gl2z_models() {
    let m = TorusModel::gl2z_model(1, -1).unwrap();
    assert_eq!(m.p_charpoly(), &p(&[1, -1, -1]).pow(2));
    assert_eq!(m.salem_factor().unwrap().s_poly, p(&[1, -3, 1]));
    assert_eq!(m.is_projective(), Ok(true));
    assert_eq!(m.picard_rank(), Ok(PicardRank::Unconstrained));
    let e = m.entropy(&rat(1, 1_000_000_000));
    let want = log_lambda(&is_salem(&p(&[1, -3, 1])).unwrap(), &rat(1, 1_000_000_000_000));
    assert!(e.intersects(&want));
    assert!(e.width() <= rat(1, 1_000_000_000));
    let r = m.reorient().unwrap();
    assert!(r.reorient_was_noop());
    assert_eq!(r.pairing_indices(), m.pairing_indices());

    let m = TorusModel::gl2z_model(3, 1).unwrap();
    assert_eq!(m.salem_factor().unwrap().s_poly, p(&[1, -7, 1]));
    assert_eq!(TorusModel::gl2z_model(1, 1).unwrap_err(), TorusError::NotHyperbolic);
    assert_eq!(TorusModel::gl2z_model(0, -1).unwrap_err(), TorusError::NotHyperbolic);
}

#[test]
fn gl2z_pairing_is_larger_root_first() {
    for (r, det) in [(3, 1), (-3, 1), (1, -1), (-2, -1)] {
        let m = TorusModel::gl2z_model(r, det).unwrap();
        let (g1, g2) = m.pairing();
        assert!(g1.re.abs_max() > g2.re.abs_max());
    }
}

#[test]
fn entropy_agrees_with_salem_factor() {
    let m = gaussian_d1(1, 1);
    let cert = m.salem_factor().unwrap();
    let eps = rat(1, 1 << 30);
    assert!(m.entropy(&eps).intersects(&log_lambda(&cert, &eps)));
    assert_eq!(m.entropy(&eps), m.reorient().unwrap().entropy(&eps));
    let lam = lambda_approx(&cert, &eps);
    assert!(to_f64(&lam.lo) > 1.0);
}

#[test]
fn power_of_two_family_salem_factor() {
    for n in 1..=2u32 {
        let four_n = 1i64 << (2 * n);
        let want = p(&[1, -(1 + four_n), -(1i64 << (2 * n + 1)), -(1 + four_n), 1]);
        for k in 0..=n {
            let m = TorusModel::power_of_two_family(n, k).unwrap();
            assert_eq!(m.salem_factor().unwrap().s_poly, want);
        }
    }
    assert!(matches!(TorusModel::power_of_two_family(1, 2), Err(TorusError::BadParameters(_))));
}

#[test]
fn degree_six_family() {
    for a in 0..=4i64 {
        let m = TorusModel::degree_six_model(a, 1, (0, 2)).unwrap();
        let want = p(&[1, 0, a, 1, 1]);
        assert_eq!(m.p_charpoly(), &want);
    }
    let m = TorusModel::degree_six_model(3, 2, (0, 2)).unwrap();
    assert_eq!(m.p_charpoly(), &p(&[1, 0, 3, 1, 1]));
    assert!(matches!(TorusModel::degree_six_model(3, 3, (0, 2)), Err(TorusError::BadParameters(_))));
}

#[test]
fn jd_lattices() {
    let m = gaussian_d1(1, 1);
    let r = m.reorient().unwrap();
    assert_eq!(r.verify_jd(&1.into()), Ok(true));
    assert_eq!(r.verify_jd(&3.into()), Ok(false));
    assert_eq!(m.verify_jd_untwisted(&1.into()), Ok(true));
    assert_eq!(m.verify_jd(&1.into()), Ok(false));
    let g = TorusModel::gl2z_model(3, 1).unwrap();
    assert_eq!(g.verify_jd(&1.into()), Err(TorusError::NotApplicable));
}

#[test]
fn jd_for_larger_d() {
    let q = QuadOrderMatrix::companion_shape(3.into(), 1.into(), 1.into());
    let m = TorusModel::quad_order_model(&q).unwrap();
    assert_eq!(m.verify_jd_untwisted(&3.into()), Ok(true));
    assert_eq!(m.reorient().unwrap().verify_jd(&3.into()), Ok(true));
    assert_eq!(m.reorient().unwrap().verify_jd(&2.into()), Ok(false));
}

#[test]
fn model_serializes() {
    let v = serde_json::to_value(gaussian_d1(1, 1)).unwrap();
    assert_eq!(v["p_charpoly"], "1,-2,4,-2,1");
    assert_eq!(v["provenance"]["family"], "quad-order");
    assert_eq!(v["m_matrix"][0][0], 0);
}
