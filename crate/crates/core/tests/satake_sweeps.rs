use std::collections::HashMap;

use critval_core::algebra::{place_var, EulerFactorDenom, LaurentPoly, Symbol};
use critval_core::satake::{
    admissible_cases, all_fixed_closed_form, lemma32_sides, prop34_lhs, prop34_rhs, verify_lemma32,
    verify_prop34, CAction, InducedDatum, PlaceKind,
};
use critval_core::weights::{compositions, IsobaricShape};

#[test]
fn lemma32_all_compositions_up_to_five() {
    for n in 1..=5 {
        for parts in compositions(n) {
            let parts: Vec<i64> = parts.iter().map(|&p| p as i64).collect();
            let shape = IsobaricShape::new(&parts).unwrap();
            for kind in [PlaceKind::Split, PlaceKind::Inert] {
                let r = verify_lemma32(&shape, kind).unwrap();
                assert!(r.equal, "{}", r.case);
            }
        }
    }
}

fn specialize_to_one(e: &EulerFactorDenom) -> EulerFactorDenom {
    let mut coeffs = Vec::new();
    for c in e.coeffs() {
        let map: HashMap<Symbol, LaurentPoly> = c
            .symbols()
            .into_iter()
            .map(|s| (s, LaurentPoly::one()))
            .collect();
        coeffs.push(c.substitute(&map).unwrap());
    }
    EulerFactorDenom::from_coeffs(e.var(), coeffs, 1).unwrap()
}

#[test]
fn lemma32_split_specializes_to_power_of_one_minus_x() {
    for parts in [vec![1, 2], vec![2, 1, 1], vec![3]] {
        let shape = IsobaricShape::new(&parts).unwrap();
        let n = shape.n() as usize;
        let (lhs, rhs) = lemma32_sides(&shape, PlaceKind::Split).unwrap();
        let want =
            EulerFactorDenom::from_eigenvalues(&place_var(), &vec![LaurentPoly::one(); n * n], 1)
                .unwrap();
        assert_eq!(specialize_to_one(&lhs), want);
        assert_eq!(specialize_to_one(&rhs), want);
    }
}

#[test]
fn prop34_all_admissible_cases_up_to_six() {
    let cases = admissible_cases(6);
    assert!(cases
        .iter()
        .any(|d| d.c_action() == CAction::InertHalfSwap && d.l() % 2 == 0));
    assert!(cases
        .iter()
        .any(|d| d.c_action() == CAction::InertHalfSwap && d.l() % 2 == 1));
    assert!(cases
        .iter()
        .any(|d| d.c_action() == CAction::InertAllFixed && d.n() % 2 == 0));
    for d in &cases {
        let r = verify_prop34(d).unwrap();
        assert!(r.equal, "{}: {} vs {}", r.case, r.lhs, r.rhs);
    }
}

#[test]
fn all_fixed_odd_n_matches_closed_form() {
    for d in admissible_cases(6)
        .into_iter()
        .filter(|d| d.c_action() == CAction::InertAllFixed)
    {
        let want = all_fixed_closed_form(d.m(), d.l()).unwrap();
        assert_eq!(prop34_rhs(&d).unwrap().normalize(), want, "{}", d.label());
        assert_eq!(
            prop34_lhs(&d, 1).unwrap().normalize(),
            want,
            "{}",
            d.label()
        );
    }
}

#[test]
fn lhs_independent_of_primitive_root() {
    for (n, m, l) in [(3, 1, 3), (4, 1, 4), (6, 2, 3)] {
        for a in CAction::all() {
            let Ok(d) = InducedDatum::new(n, m, l, a) else {
                continue;
            };
            assert_eq!(
                prop34_lhs(&d, 1).unwrap().normalize(),
                prop34_lhs(&d, l as i64 - 1).unwrap().normalize(),
                "{}",
                d.label()
            );
        }
    }
}

#[test]
fn wrong_product_side_is_detected() {
    let d = InducedDatum::new(4, 2, 2, CAction::InertHalfSwap).unwrap();
    let lhs = prop34_lhs(&d, 1).unwrap().normalize();
    let other = InducedDatum::new(4, 4, 1, CAction::InertHalfSwap).unwrap();
    assert_ne!(lhs, prop34_rhs(&other).unwrap().normalize());
}
