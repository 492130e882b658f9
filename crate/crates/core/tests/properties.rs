//! Invariants as property tests.

mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use salem_tori::atlas::reciprocal_box;
use salem_tori::poly::{parse_poly, print_poly, IntPoly};
use salem_tori::salem::{is_salem, lambda_approx, NotSalem};
use salem_tori::torus::{QuadOrderMatrix, TorusModel};
use salem_tori::wedge::{exterior_square, invert_wedge, square_values};

use common::{charpoly_by_interpolation, companion, ratio, second_compound};

fn poly_strategy() -> impl Strategy<Value = IntPoly> {
    prop::collection::vec(-1000i64..=1000, 1..10).prop_map(|c| IntPoly::from_i64s(&c))
}

/// t^4 + c3 t^3 + c2 t^2 + c1 t + 1.
fn unit_quartic() -> impl Strategy<Value = (i64, i64, i64)> {
    (-8i64..=8, -8i64..=8, -8i64..=8)
}

fn quartic(c3: i64, c2: i64, c1: i64) -> IntPoly {
    IntPoly::from_desc(&[1, c3, c2, c1, 1])
}

fn quad_params() -> impl Strategy<Value = (i64, i64, i64)> {
    (1i64..=6, -4i64..=4, -4i64..=4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn print_parse_round_trip(p in poly_strategy()) {
        prop_assert_eq!(parse_poly(&print_poly(&p)).unwrap(), p);
    }

    #[test]
    fn exterior_square_is_compound_charpoly(c in prop::collection::vec(-20i64..=20, 4)) {
        let p = IntPoly::from_desc(&[1, c[0], c[1], c[2], c[3]]);
        prop_assert_eq!(exterior_square(&p).unwrap(), charpoly_by_interpolation(&second_compound(&companion(&p))));
    }

    #[test]
    fn unit_quartic_wedge_is_reciprocal_with_square_values((c3, c2, c1) in unit_quartic()) {
        let q = exterior_square(&quartic(c3, c2, c1)).unwrap();
        prop_assert!(q.is_reciprocal());
        let (m, n) = square_values(&q).unwrap();
        prop_assert_eq!(m, BigInt::from((c3 - c1).abs()));
        prop_assert_eq!(n, BigInt::from((c3 + c1).abs()));
    }

    #[test]
    fn invert_wedge_finds_the_quartic((c3, c2, c1) in unit_quartic()) {
        let p = quartic(c3, c2, c1);
        let inv = invert_wedge(&exterior_square(&p).unwrap()).unwrap();
        prop_assert!(inv.verified.contains(&p));
        for v in &inv.verified {
            prop_assert_eq!(exterior_square(v).unwrap(), inv.q_poly.clone());
        }
    }

    #[test]
    fn products_are_reducible(a in 1i64..=5, b in -2i64..=2) {
        let p = &IntPoly::from_desc(&[1, -(a + 2), 1]) * &IntPoly::from_desc(&[1, b, 1]);
        let is_reducible = matches!(is_salem(&p), Err(NotSalem::Reducible { .. }));
        prop_assert!(is_reducible);
    }

    #[test]
    fn quad_order_model_invariants((d, b1, b2) in quad_params()) {
        let m = TorusModel::quad_order_model(&QuadOrderMatrix::companion_shape(d.into(), b1.into(), b2.into())).unwrap();
        prop_assert_eq!(&m.m_matrix().charpoly(), m.p_charpoly());
        prop_assert_eq!(&exterior_square(m.p_charpoly()).unwrap(), m.q_charpoly());
        if m.has_positive_entropy() {
            let r = m.reorient().unwrap();
            let eps = ratio(1, 1 << 20);
            prop_assert!(m.entropy(&eps).intersects(&r.entropy(&eps)));
            prop_assert_eq!(r.q_charpoly(), m.q_charpoly());
            prop_assert_eq!(r.reorient().unwrap().pairing_indices(), m.pairing_indices());
            let salem_degree = m.salem_factor().map(|c| c.degree);
            if salem_degree == Some(4) {
                prop_assert_ne!(m.is_projective().unwrap(), r.is_projective().unwrap());
            }
        }
    }

    #[test]
    fn lambda_intervals_shrink_and_nest(idx in 0usize..125) {
        let p = &reciprocal_box(6, 2)[idx];
        if let Ok(cert) = is_salem(p) {
            let coarse = lambda_approx(&cert, &ratio(1, 1 << 10));
            let fine = lambda_approx(&cert, &ratio(1, 1 << 40));
            prop_assert!(fine.width() <= ratio(1, 1 << 40));
            prop_assert!(coarse.intersects(&fine));
            prop_assert!(fine.lo > ratio(1, 1));
        }
    }
}

#[test]
fn parse_print_round_trip_on_sweep_ranges() {
    for (deg, bound) in [(2, 4), (4, 3), (6, 3)] {
        for p in reciprocal_box(deg, bound) {
            assert_eq!(parse_poly(&print_poly(&p)).unwrap(), p);
        }
    }
}

#[test]
fn csv_lambda_lies_in_certified_interval() {
    for (deg, bound) in [(2, 6), (4, 3), (6, 2)] {
        for row in salem_tori::atlas::enumerate(deg, bound, 2).unwrap() {
            let p = parse_poly(&row.s_poly).unwrap();
            let lo = common::decimal(&row.lambda);
            let hi = &lo + ratio(1, 1_000_000_000_000);
            let cert = is_salem(&p).unwrap();
            let lam = lambda_approx(&cert, &ratio(1, 1_000_000_000_000_000));
            assert!(lam.lo >= lo && lam.hi <= hi, "{} lambda {}", row.s_poly, row.lambda);
        }
    }
}

#[test]
fn csv_rows_sorted_by_degree_then_lambda() {
    let rows = salem_tori::atlas::enumerate(6, 3, 3).unwrap();
    for w in rows.windows(2) {
        assert!(w[0].degree <= w[1].degree);
        assert!(common::decimal(&w[0].lambda) <= common::decimal(&w[1].lambda), "{} before {}", w[0].lambda, w[1].lambda);
    }
}
