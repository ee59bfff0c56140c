use critval_core::period::*;
use critval_core::weights::IsobaricShape;

fn cm(field: &str, sigma: u32, i: u32, conj: bool, e: i64) -> (PeriodAtom, i64) {
    (
        PeriodAtom::cm(
            CharExpr::atom(CharAtom::new("χ", field).checked()),
            [Emb::new(field, sigma, vec![i], conj)],
        ),
        e,
    )
}

#[test]
fn asai_n2_d1() {
    let t = derive_asai_induced(2, 1).unwrap();
    assert_eq!(t.exponent, 3);
    let want: PeriodMonomial = [cm("L", 1, 2, false, 1), cm("L", 1, 1, true, 1)]
        .into_iter()
        .collect();
    assert_eq!(t.residual, want, "{}", t.residual);
    assert!(t.matches());
    assert!(t.replay());
}

#[test]
fn asai_small_cases() {
    assert_eq!(derive_asai_induced(3, 1).unwrap().exponent, 6);
    assert_eq!(derive_asai_induced(5, 2).unwrap().exponent, 30);
    let t = derive_asai_induced(3, 1).unwrap();
    assert!(t.matches(), "{}", t.residual);
}

#[test]
fn rs_small_cases() {
    let t = derive_rs_induced(2, 0, 1).unwrap();
    assert_eq!(t.exponent, 1);
    assert!(t.matches(), "{}", t.residual);
    let t = derive_rs_induced(3, 1, 1).unwrap();
    assert_eq!(t.exponent, 9);
    assert!(t.matches(), "{}", t.residual);
}

#[test]
fn rs_cm_type_triangle() {
    for n in 2..=8u32 {
        let count = (1..=n)
            .flat_map(|i| (1..n).map(move |j| (i, j)))
            .filter(|(i, j)| i + j > n)
            .count() as u32;
        assert_eq!(count, n * (n - 1) / 2);
    }
}

#[test]
fn arch_asai_examples() {
    let t = derive_arch_asai(2, 1).unwrap();
    assert!(t.matches(), "{:?}", t.solves.iter().map(|s| s.segment.end.to_string()).collect::<Vec<_>>());
    assert_eq!(t.exponent, 2);
    assert_eq!(derive_arch_asai(7, 3).unwrap().exponent, 21);
    for m in [0, 1, 2] {
        assert_eq!(derive_arch_asai_with(4, 2, m).unwrap().exponent, 8);
    }
    assert!(!derive_arch_asai_with(3, 1, 0).unwrap().assumptions.is_empty());
}

#[test]
fn arch_rs_examples() {
    let t = derive_arch_rs(2, 0, 1).unwrap();
    assert_eq!(t.exponent, 0);
    let t = derive_arch_rs(3, 1, 1).unwrap();
    assert_eq!(t.exponent, 5);
    assert!(t.residual.is_one());
    assert!(t.matches());
}

#[test]
fn main_theorem_examples() {
    assert_eq!(derive_main_theorems(Goal::Delta, 3, 1, 0, None).unwrap().0, 6);
    assert_eq!(derive_main_theorems(Goal::Delta, 2, 1, 0, None).unwrap().0, 3);
    assert_eq!(derive_main_theorems(Goal::ThmC, 2, 1, 0, None).unwrap().0, -3);
    assert_eq!(derive_main_theorems(Goal::ThmC, 3, 2, 1, None).unwrap().0, 0);
    assert_eq!(derive_main_theorems(Goal::ThmE, 3, 1, 2, Some(1)).unwrap().0, 6);
    assert_eq!(derive_main_theorems(Goal::ThmB, 4, 1, 0, None).unwrap().0, 4);
    assert_eq!(derive_main_theorems(Goal::ThmA, 3, 1, 1, None).unwrap().0, 5);
}

#[test]
fn thm_b_isobaric_shapes() {
    for parts in [vec![1, 3], vec![2, 2], vec![1, 1, 2], vec![3, 1]] {
        let p = Params {
            n: 4,
            d: 2,
            m: 0,
            l: None,
            parts: Some(parts.clone()),
        };
        let t = derive_goal(Goal::ThmB, &p).unwrap();
        assert!(t.matches(), "{:?}: {}", parts, t.exponent);
        assert_eq!(t.exponent, 8);
    }
}

#[test]
fn thm_e_equal_points() {
    let (e, t) = derive_main_theorems(Goal::ThmE, 3, 1, 1, Some(1)).unwrap();
    assert_eq!(e, 0);
    assert!(t.matches());
}

#[test]
fn isobaric_whittaker_relation() {
    let t = derive_isobaric_whittaker(&IsobaricShape::new(&[2]).unwrap()).unwrap();
    assert_eq!(t.residual.to_string(), "p(Pi1^alg)");
    let t = derive_isobaric_whittaker(&IsobaricShape::new(&[1, 2]).unwrap()).unwrap();
    assert_eq!(t.residual.len(), 3);
    assert!(t.matches());
    let t = derive_isobaric_whittaker(&IsobaricShape::new(&[1, 2, 2]).unwrap()).unwrap();
    let whittaker = t
        .residual
        .iter()
        .filter(|(a, _)| matches!(a, PeriodAtom::Whittaker(_)))
        .count();
    assert_eq!((whittaker, t.residual.len() - whittaker), (3, 3));
    let bad = derive_isobaric_whittaker_flags(&IsobaricShape::new(&[1, 2]).unwrap(), &[true, false]);
    assert!(matches!(bad, Err(PeriodError::InvalidParam(_))));
}

#[test]
fn out_of_range_parameters() {
    assert!(derive_asai_induced(1, 1).is_err());
    assert!(derive_arch_rs(2, 0, 0).is_err());
    assert!(derive_main_theorems(Goal::ThmE, 3, 1, 1, None).is_err());
    assert!(derive_main_theorems(Goal::AsaiInduced, 3, 1, 1, None).is_err());
    assert!("thm-c".parse::<Goal>().is_ok());
    assert!("nonsense".parse::<Goal>().is_err());
}

#[test]
fn tampered_trace_does_not_replay() {
    let mut t = derive_rs_induced(3, 0, 1).unwrap();
    assert!(t.replay());
    let seg = &mut t.relations[0].rhs;
    let k = seg.steps.len() / 2;
    seg.steps.remove(k);
    assert!(!t.replay());
}

#[test]
fn trace_json_shape() {
    let t = derive_arch_asai_with(2, 1, 0).unwrap();
    let v = t.to_json();
    for key in ["goal", "params", "steps", "exponent", "residual", "assumptions", "tag"] {
        assert!(v.get(key).is_some(), "{}", key);
    }
    assert_eq!(v["exponent"], 2);
    assert_eq!(v["residual"], "1");
    let step = &v["steps"][0];
    for key in ["rule", "tag", "monomial"] {
        assert!(step[key].is_string(), "{}", key);
    }
    assert_eq!(v["assumptions"].as_array().unwrap().len(), 2);
}

#[test]
fn blasius_shift_adds_the_degree() {
    let mut ctx = Ctx::new(3);
    ctx.add_char(
        "ψ",
        BASE,
        CharKind::Algebraic {
            types: vec![-4],
            self_dual: false,
        },
    );
    let at = |m| {
        PeriodAtom::lvalue(
            HalfInt::int(m),
            LObject::Hecke {
                chi: CharExpr::atom(CharAtom::new("ψ", BASE)),
                field: BASE.into(),
            },
        )
    };
    for m in -2..4 {
        let a = rule_blasius(&ctx, &at(m)).unwrap();
        let b = rule_blasius(&ctx, &at(m + 1)).unwrap();
        assert_eq!(b.two_pi_exponent() - a.two_pi_exponent(), 3);
        assert_eq!(a.without_two_pi(), b.without_two_pi());
    }
    assert!(rule_blasius(&ctx, &at(5)).is_err());
}

#[test]
fn cm_relation_examples() {
    let mut ctx = Ctx::new(2);
    ctx.add_char(
        "ψ",
        BASE,
        CharKind::Algebraic {
            types: vec![2],
            self_dual: true,
        },
    );
    let chi = CharExpr::atom(CharAtom::new("ψ", BASE));
    let e1 = Emb::new(BASE, 1, vec![], false);
    let e2 = Emb::new(BASE, 2, vec![], true);
    let whole = PeriodMonomial::atom(PeriodAtom::cm(chi.clone(), [e1.clone(), e2.clone()]));
    let seg = rewrite(&ctx, "t", &whole, &[&[Rule::Partition]]).unwrap();
    let want: PeriodMonomial = [
        (PeriodAtom::cm(chi.clone(), [e1]), 1),
        (PeriodAtom::cm(chi, [e2]), 1),
    ]
    .into_iter()
    .collect();
    assert_eq!(seg.end, want);
    assert_eq!(rule_cm_relations().len(), 10);
    assert_eq!(rule_zeta_values(), vec![Rule::ZetaEven, Rule::QuadraticOdd]);
}
