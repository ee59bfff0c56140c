//! Directed rewrite rules on period monomials.

use std::collections::BTreeSet;
use std::fmt;

use super::atom::{CharAtom, CharExpr, CharOp, Emb, FieldTag, HalfInt, LObject, PeriodAtom, PeriodMonomial};
use super::context::{flat_eta, flat_name, Ctx, RepInfo, RepKind, BASE, PHI};
use super::PeriodError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    AsaiInduced,
    AsaiIsobaric,
    RsInduced,
    RsIsobaricHecke,
    RsHecke,
    AsaiWhittaker,
    RsWhittaker,
    GaussSelfDual,
    WhittakerFromAsai,
    WhittakerIsobaric,
    WhittakerTwist,
    WhittakerHecke,
    GaussPhi,
    GaussQuadratic,
    ArchAsaiDerived,
    ArchRsDerived,
    Blasius,
    ZetaEven,
    QuadraticOdd,
    FiniteOrder,
    Partition,
    Multiplicativity,
    RestrictionLift,
    NormCollapse,
    Conjugation,
    GaloisTranslation,
    NormCharacter,
    PhiPairing,
    SelfDualPairing,
    SelfDualCancel,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::AsaiInduced => "asai-induced-factorization",
            Rule::AsaiIsobaric => "asai-isobaric-factorization",
            Rule::RsInduced => "rs-induced-factorization",
            Rule::RsIsobaricHecke => "rs-isobaric-hecke-factorization",
            Rule::RsHecke => "rs-hecke",
            Rule::AsaiWhittaker => "asai-whittaker",
            Rule::RsWhittaker => "rs-whittaker",
            Rule::GaussSelfDual => "gauss-self-dual",
            Rule::WhittakerFromAsai => "whittaker-from-asai",
            Rule::WhittakerIsobaric => "whittaker-isobaric",
            Rule::WhittakerTwist => "whittaker-twist",
            Rule::WhittakerHecke => "whittaker-hecke",
            Rule::GaussPhi => "gauss-phi",
            Rule::GaussQuadratic => "gauss-quadratic",
            Rule::ArchAsaiDerived => "arch-asai-derived",
            Rule::ArchRsDerived => "arch-rs-derived",
            Rule::Blasius => "blasius",
            Rule::ZetaEven => "zeta-even",
            Rule::QuadraticOdd => "quadratic-odd",
            Rule::FiniteOrder => "finite-order",
            Rule::Partition => "partition",
            Rule::Multiplicativity => "multiplicativity",
            Rule::RestrictionLift => "restriction-lift",
            Rule::NormCollapse => "norm-collapse",
            Rule::Conjugation => "conjugation",
            Rule::GaloisTranslation => "galois-translation",
            Rule::NormCharacter => "norm-character",
            Rule::PhiPairing => "phi-pairing",
            Rule::SelfDualPairing => "self-dual-pairing",
            Rule::SelfDualCancel => "self-dual-cancel",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One rule application: the monomial is divided by `remove` and multiplied by `add`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rewrite {
    pub remove: PeriodMonomial,
    pub add: PeriodMonomial,
    pub tag: FieldTag,
}

fn whole(atom: &PeriodAtom, exp: i64, replacement: PeriodMonomial, tag: FieldTag) -> Rewrite {
    Rewrite {
        remove: PeriodMonomial::pow_atom(atom.clone(), exp),
        add: replacement.pow(exp),
        tag,
    }
}

fn tag_of_chars(chi: &CharExpr) -> FieldTag {
    chi.0
        .keys()
        .fold(FieldTag::q(), |t, a| t.join(&FieldTag::e_of(&a.name)))
}

fn single_cm(atom: &PeriodAtom) -> Option<(&CharAtom, &Emb)> {
    match atom {
        PeriodAtom::Cm { chi, emb } if emb.len() == 1 => {
            Some((chi.single()?, emb.iter().next()?))
        }
        _ => None,
    }
}

fn cm1(a: CharAtom, e: Emb) -> PeriodAtom {
    PeriodAtom::cm(CharExpr::atom(a), [e])
}

fn lval(point: HalfInt, obj: LObject) -> PeriodMonomial {
    PeriodMonomial::atom(PeriodAtom::lvalue(point, obj))
}

fn gauss_label(rep: &str) -> String {
    format!("ω_{{{}}}", rep)
}

fn gal_tag(field: &str) -> FieldTag {
    FieldTag::of(&[&format!("{}^Gal", field.trim_end_matches('⁺'))])
}

/// Blasius: L(m, χ) ↦ (2πi)^{m·deg} p(χ̌, Φ_χ), with Φ_χ = {ι : p_ι < q_ι}
/// for χ of infinity-type z^p z̄^q at ι.
pub fn rule_blasius(ctx: &Ctx, atom: &PeriodAtom) -> Result<PeriodMonomial, PeriodError> {
    let PeriodAtom::LValue {
        point,
        obj: LObject::Hecke { chi, field },
    } = atom
    else {
        return Err(PeriodError::InvalidParam(format!(
            "{} is not a Hecke L-value",
            atom
        )));
    };
    let m = point
        .as_int()
        .ok_or_else(|| PeriodError::NotCritical(format!("{} at a half-integer", atom)))?;
    if chi.0.is_empty() {
        return Err(PeriodError::NotCritical(format!("{}: trivial character", atom)));
    }
    for a in chi.0.keys() {
        if a.field() != field {
            return Err(PeriodError::InvalidParam(format!(
                "{} does not live on {}",
                a, field
            )));
        }
    }
    let reps = ctx.representatives(field)?;
    let mut phi = BTreeSet::new();
    for e in &reps {
        let mut p = 0;
        let mut q = 0;
        for (a, k) in &chi.0 {
            let (x, y) = ctx.char_type(a, e)?;
            p += k * x;
            q += k * y;
        }
        if p == q {
            return Err(PeriodError::NotCritical(format!(
                "{} has parallel infinity-type at {}",
                chi, e
            )));
        }
        if m < 1 - p.max(q) || m > -p.min(q) {
            return Err(PeriodError::NotCritical(format!(
                "{} is outside the critical window of {} at {}",
                m, chi, e
            )));
        }
        phi.insert(if p < q { e.clone() } else { ctx.conj(e)? });
    }
    let mut out = PeriodMonomial::two_pi_i(m * reps.len() as i64);
    out.mul_atom(
        PeriodAtom::Cm {
            chi: chi.checked(),
            emb: phi,
        },
        1,
    );
    Ok(out)
}

/// The relations among CM periods, in the order they are tried.
pub fn rule_cm_relations() -> Vec<Rule> {
    vec![
        Rule::FiniteOrder,
        Rule::Partition,
        Rule::Multiplicativity,
        Rule::RestrictionLift,
        Rule::NormCollapse,
        Rule::Conjugation,
        Rule::GaloisTranslation,
        Rule::NormCharacter,
        Rule::PhiPairing,
        Rule::SelfDualPairing,
    ]
}

pub fn rule_zeta_values() -> Vec<Rule> {
    vec![Rule::ZetaEven, Rule::QuadraticOdd]
}

impl Rule {
    /// Tries the rule on `atom`, which occurs in `mono` with exponent `exp`.
    pub fn apply(
        self,
        ctx: &Ctx,
        atom: &PeriodAtom,
        exp: i64,
        mono: &PeriodMonomial,
    ) -> Result<Option<Rewrite>, PeriodError> {
        match self {
            Rule::AsaiInduced => asai_induced(ctx, atom, exp),
            Rule::AsaiIsobaric => asai_isobaric(ctx, atom, exp),
            Rule::RsInduced => rs_induced(ctx, atom, exp),
            Rule::RsIsobaricHecke => rs_isobaric_hecke(ctx, atom, exp),
            Rule::RsHecke => rs_hecke(ctx, atom, exp),
            Rule::AsaiWhittaker => asai_whittaker(ctx, atom, exp),
            Rule::RsWhittaker => rs_whittaker(ctx, atom, exp),
            Rule::GaussSelfDual => gauss_self_dual(ctx, atom, exp),
            Rule::WhittakerFromAsai => whittaker_from_asai(ctx, atom, exp),
            Rule::WhittakerIsobaric => whittaker_isobaric(ctx, atom, exp),
            Rule::WhittakerTwist => whittaker_twist(ctx, atom, exp),
            Rule::WhittakerHecke => whittaker_hecke(ctx, atom, exp),
            Rule::GaussPhi => Ok(match atom {
                PeriodAtom::Gauss(l) if l == &phi_inv_gauss() => Some(whole(
                    atom,
                    exp,
                    PeriodMonomial::atom(PeriodAtom::Gauss(eps_gauss())),
                    FieldTag::e_of(PHI),
                )),
                _ => None,
            }),
            Rule::GaussQuadratic => Ok(match atom {
                PeriodAtom::Gauss(l) if l == &eps_gauss() => {
                    Some(whole(atom, exp, PeriodMonomial::one(), gal_tag(BASE)))
                }
                _ => None,
            }),
            Rule::ArchAsaiDerived => Ok(match atom {
                PeriodAtom::ArchAsai(key) => ctx.arch_asai_exponent(key).map(|k| {
                    whole(atom, exp, PeriodMonomial::two_pi_i(k), FieldTag::e_of(key))
                }),
                _ => None,
            }),
            Rule::ArchRsDerived => Ok(match atom {
                PeriodAtom::ArchRs { m, left, right } => {
                    ctx.arch_rs_exponent(*m, left, right).map(|k| {
                        whole(
                            atom,
                            exp,
                            PeriodMonomial::two_pi_i(k),
                            FieldTag::e_of(left).join(&FieldTag::e_of(right)),
                        )
                    })
                }
                _ => None,
            }),
            Rule::Blasius => match atom {
                PeriodAtom::LValue {
                    obj: LObject::Hecke { chi, .. },
                    ..
                } => Ok(Some(whole(
                    atom,
                    exp,
                    rule_blasius(ctx, atom)?,
                    tag_of_chars(chi),
                ))),
                _ => Ok(None),
            },
            Rule::ZetaEven => Ok(match atom {
                PeriodAtom::LValue {
                    point,
                    obj: LObject::Zeta { field, deg },
                } => match point.as_int() {
                    Some(m) if m >= 2 && m % 2 == 0 => Some(whole(
                        atom,
                        exp,
                        PeriodMonomial::two_pi_i(m * *deg as i64),
                        gal_tag(field),
                    )),
                    _ => None,
                },
                _ => None,
            }),
            Rule::QuadraticOdd => Ok(match atom {
                PeriodAtom::LValue {
                    point,
                    obj: LObject::QuadEps { field, deg },
                } => match point.as_int() {
                    Some(m) if m >= 1 && m % 2 == 1 => Some(whole(
                        atom,
                        exp,
                        PeriodMonomial::two_pi_i(m * *deg as i64),
                        gal_tag(field),
                    )),
                    _ => None,
                },
                _ => None,
            }),
            Rule::FiniteOrder => Ok(match atom {
                PeriodAtom::Cm { chi, .. } => chi.single().and_then(|a| {
                    ctx.is_quadratic(&a.name).then(|| {
                        whole(atom, exp, PeriodMonomial::one(), FieldTag::e_of(&a.name))
                    })
                }),
                _ => None,
            }),
            Rule::Partition => Ok(match atom {
                PeriodAtom::Cm { chi, emb } if emb.len() > 1 => Some(whole(
                    atom,
                    exp,
                    emb.iter()
                        .map(|e| (PeriodAtom::cm(chi.clone(), [e.clone()]), 1))
                        .collect(),
                    tag_of_chars(chi),
                )),
                _ => None,
            }),
            Rule::Multiplicativity => Ok(match atom {
                PeriodAtom::Cm { chi, emb } if emb.len() == 1 && chi.single().is_none() => {
                    Some(whole(
                        atom,
                        exp,
                        chi.0
                            .iter()
                            .map(|(a, k)| (PeriodAtom::cm(CharExpr::atom(a.clone()), emb.clone()), *k))
                            .collect(),
                        tag_of_chars(chi),
                    ))
                }
                _ => None,
            }),
            Rule::RestrictionLift => restriction_lift(ctx, atom, exp),
            Rule::NormCollapse => Ok(match single_cm(atom) {
                Some((a, e)) if matches!(a.op, CharOp::Lift(_)) => {
                    let down = ctx.restrict(e, &a.home)?;
                    Some(whole(
                        atom,
                        exp,
                        PeriodMonomial::atom(cm1(a.plain(), down)),
                        FieldTag::e_of(&a.name),
                    ))
                }
                _ => None,
            }),
            Rule::Conjugation => Ok(match single_cm(atom) {
                Some((a, e)) if a.op == CharOp::Plain && a.conj => Some(whole(
                    atom,
                    exp,
                    PeriodMonomial::atom(cm1(
                        CharAtom {
                            conj: false,
                            ..a.clone()
                        },
                        ctx.conj(e)?,
                    )),
                    FieldTag::e_of(&a.name),
                )),
                _ => None,
            }),
            Rule::GaloisTranslation => Ok(match single_cm(atom) {
                Some((a, e)) if a.op == CharOp::Plain && !a.conj && a.theta > 0 => Some(whole(
                    atom,
                    exp,
                    PeriodMonomial::atom(cm1(
                        CharAtom {
                            theta: 0,
                            ..a.clone()
                        },
                        ctx.translate(e, a.theta)?,
                    )),
                    FieldTag::e_of(&a.name),
                )),
                _ => None,
            }),
            Rule::NormCharacter => Ok(match single_cm(atom) {
                Some((a, _)) if a.op == CharOp::Plain && ctx.is_norm(&a.name) => Some(whole(
                    atom,
                    exp,
                    PeriodMonomial::two_pi_i(if a.check { 1 } else { -1 }),
                    FieldTag::q(),
                )),
                _ => None,
            }),
            Rule::PhiPairing => {
                let Some((a, e)) = single_cm(atom) else {
                    return Ok(None);
                };
                if a.op != CharOp::Plain || a.conj || a.theta != 0 || !ctx.is_phi(&a.name) || e.conj
                {
                    return Ok(None);
                }
                let partner = cm1(a.clone(), ctx.conj(e)?);
                let t = common(exp, mono.exponent(&partner));
                if t == 0 {
                    return Ok(None);
                }
                let mut remove = PeriodMonomial::pow_atom(atom.clone(), t);
                remove.mul_atom(partner, t);
                Ok(Some(Rewrite {
                    remove,
                    add: PeriodMonomial::two_pi_i(if a.check { t } else { -t }),
                    tag: FieldTag::e_of(PHI),
                }))
            }
            Rule::SelfDualPairing | Rule::SelfDualCancel => {
                let Some((a, e)) = single_cm(atom) else {
                    return Ok(None);
                };
                if a.op != CharOp::Plain
                    || a.conj
                    || a.theta != 0
                    || !ctx.is_self_dual(&a.name)
                    || e.conj
                    || e.field.ends_with('♭')
                {
                    return Ok(None);
                }
                let partner = cm1(a.clone(), ctx.conj(e)?);
                let b = mono.exponent(&partner);
                let t = if self == Rule::SelfDualCancel {
                    common(exp, b)
                } else {
                    let r = ctx.rank(&a.home)? as i64;
                    let excess = exp + b - (r - 1);
                    if exp >= 1 && b >= 1 && excess > 0 {
                        exp.min(b).min((excess + 1) / 2)
                    } else {
                        0
                    }
                };
                if t == 0 {
                    return Ok(None);
                }
                let mut remove = PeriodMonomial::pow_atom(atom.clone(), t);
                remove.mul_atom(partner, t);
                Ok(Some(Rewrite {
                    remove,
                    add: PeriodMonomial::one(),
                    tag: FieldTag::e_of(&a.name),
                }))
            }
        }
    }
}

/// The largest power of a pair that can be removed from exponents of equal sign.
fn common(a: i64, b: i64) -> i64 {
    if a > 0 && b > 0 {
        a.min(b)
    } else if a < 0 && b < 0 {
        a.max(b)
    } else {
        0
    }
}

pub(crate) fn phi_inv_gauss() -> String {
    "φ⁻¹_f".to_string()
}

pub(crate) fn eps_gauss() -> String {
    "ε_f".to_string()
}

fn asai_induced(ctx: &Ctx, atom: &PeriodAtom, exp: i64) -> Result<Option<Rewrite>, PeriodError> {
    let PeriodAtom::LValue {
        point,
        obj: LObject::Asai { rep },
    } = atom
    else {
        return Ok(None);
    };
    let info = ctx.rep(rep)?;
    let RepKind::Induced { chi } = &info.kind else {
        return Ok(None);
    };
    if *point != HalfInt::int(1) {
        return Ok(None);
    }
    let field = ctx.char_info(chi)?.0.clone();
    let n = ctx.rank(&field)?;
    let chi_a = CharAtom::new(chi, &field);
    let kmax = if n % 2 == 1 { (n - 1) / 2 } else { n.saturating_sub(2) / 2 };
    let mut out = PeriodMonomial::one();
    for k in 1..=kmax {
        out = out.mul(&lval(
            *point,
            LObject::Hecke {
                chi: CharExpr::from_atoms([chi_a.clone(), chi_a.translated(k, true)]),
                field: field.clone(),
            },
        ));
    }
    out = out.mul(&lval(
        *point,
        LObject::QuadEps {
            field: field.clone(),
            deg: ctx.d() * n,
        },
    ));
    if n % 2 == 0 {
        let flat = flat_name(&field);
        out = out.mul(&lval(
            *point,
            LObject::Hecke {
                chi: CharExpr::from_atoms([
                    chi_a.restricted(&flat),
                    CharAtom::new(&flat_eta(&field), &flat),
                ]),
                field: flat,
            },
        ));
    }
    Ok(Some(whole(atom, exp, out, FieldTag::q())))
}

fn asai_isobaric(ctx: &Ctx, atom: &PeriodAtom, exp: i64) -> Result<Option<Rewrite>, PeriodError> {
    let PeriodAtom::LValue {
        point,
        obj: LObject::Asai { rep },
    } = atom
    else {
        return Ok(None);
    };
    let RepKind::Isobaric { summands } = &ctx.rep(rep)?.kind else {
        return Ok(None);
    };
    let mut out = PeriodMonomial::one();
    for (i, s) in summands.iter().enumerate() {
        out = out.mul(&lval(*point, LObject::Asai { rep: s.alg.clone() }));
        for t in &summands[i + 1..] {
            out = out.mul(&lval(
                *point,
                LObject::RankinSelberg {
                    left: s.plain.clone(),
                    right: t.plain.clone(),
                    dual: true,
                },
            ));
        }
    }
    Ok(Some(whole(atom, exp, out, FieldTag::q())))
}

fn induced_char(ctx: &Ctx, rep: &str) -> Result<Option<CharAtom>, PeriodError> {
    Ok(match &ctx.rep(rep)?.kind {
        RepKind::Induced { chi } => Some(CharAtom::new(chi, &ctx.char_info(chi)?.0)),
        _ => None,
    })
}

fn rs_point(point: &HalfInt) -> Option<i64> {
    (point.0 % 2 != 0).then_some((point.0 - 1) / 2)
}

fn rs_induced(ctx: &Ctx, atom: &PeriodAtom, exp: i64) -> Result<Option<Rewrite>, PeriodError> {
    let PeriodAtom::LValue {
        point,
        obj: LObject::RankinSelberg { left, right, dual: false },
    } = atom
    else {
        return Ok(None);
    };
    let (Some(m), Some(a), Some(b)) = (
        rs_point(point),
        induced_char(ctx, left)?,
        induced_char(ctx, right)?,
    ) else {
        return Ok(None);
    };
    let top = ctx.compositum(&a.home, &b.home)?;
    let chi = CharExpr::from_atoms([
        a.lifted(&top),
        b.lifted(&top),
        CharAtom::new(PHI, BASE).lifted(&top),
    ]);
    Ok(Some(whole(
        atom,
        exp,
        lval(HalfInt::int(m), LObject::Hecke { chi, field: top }),
        FieldTag::q(),
    )))
}

fn rs_isobaric_hecke(
    ctx: &Ctx,
    atom: &PeriodAtom,
    exp: i64,
) -> Result<Option<Rewrite>, PeriodError> {
    let PeriodAtom::LValue {
        point,
        obj: LObject::RankinSelberg { left, right, dual: false },
    } = atom
    else {
        return Ok(None);
    };
    let (Some(m), Some(a)) = (rs_point(point), induced_char(ctx, left)?) else {
        return Ok(None);
    };
    let RepKind::Isobaric { summands } = &ctx.rep(right)?.kind else {
        return Ok(None);
    };
    let mut out = PeriodMonomial::one();
    for s in summands {
        let RepKind::Hecke { chi } = &ctx.rep(&s.plain)?.kind else {
            return Ok(None);
        };
        let c = CharAtom::new(chi, &ctx.char_info(chi)?.0);
        out = out.mul(&lval(
            HalfInt::int(m),
            LObject::Hecke {
                chi: CharExpr::from_atoms([
                    a.clone(),
                    c.lifted(&a.home),
                    CharAtom::new(PHI, BASE).lifted(&a.home),
                ]),
                field: a.home.clone(),
            },
        ));
    }
    Ok(Some(whole(atom, exp, out, FieldTag::q())))
}

fn rs_hecke(ctx: &Ctx, atom: &PeriodAtom, exp: i64) -> Result<Option<Rewrite>, PeriodError> {
    let PeriodAtom::LValue {
        point,
        obj: LObject::RankinSelberg { left, right, dual: true },
    } = atom
    else {
        return Ok(None);
    };
    let (RepKind::Hecke { chi: x }, RepKind::Hecke { chi: y }) =
        (&ctx.rep(left)?.kind, &ctx.rep(right)?.kind)
    else {
        return Ok(None);
    };
    let home = ctx.char_info(x)?.0.clone();
    let chi = CharExpr::from_atoms([
        CharAtom::new(x, &home),
        CharAtom::new(y, &ctx.char_info(y)?.0).translated(0, true),
    ]);
    Ok(Some(whole(
        atom,
        exp,
        lval(*point, LObject::Hecke { chi, field: home }),
        FieldTag::q(),
    )))
}

fn asai_whittaker(ctx: &Ctx, atom: &PeriodAtom, exp: i64) -> Result<Option<Rewrite>, PeriodError> {
    let PeriodAtom::LValue {
        point,
        obj: LObject::Asai { rep },
    } = atom
    else {
        return Ok(None);
    };
    let info = ctx.rep(rep)?;
    if *point != HalfInt::int(1) || !info.is_cuspidal() || !info.self_dual {
        return Ok(None);
    }
    let mut out = PeriodMonomial::atom(PeriodAtom::ArchAsai(info.arch.clone()));
    out.mul_atom(PeriodAtom::Whittaker(rep.clone()), 1);
    Ok(Some(whole(atom, exp, out, FieldTag::e_of(rep))))
}

fn rs_whittaker(ctx: &Ctx, atom: &PeriodAtom, exp: i64) -> Result<Option<Rewrite>, PeriodError> {
    let PeriodAtom::LValue {
        point,
        obj: LObject::RankinSelberg { left, right, dual: false },
    } = atom
    else {
        return Ok(None);
    };
    let Some(m) = rs_point(point) else {
        return Ok(None);
    };
    let l = ctx.rep(left)?;
    let r = ctx.rep(right)?;
    if !l.is_cuspidal() || l.rank != r.rank + 1 {
        return Ok(None);
    }
    let out: PeriodMonomial = [
        (PeriodAtom::Whittaker(left.clone()), 1),
        (PeriodAtom::Whittaker(right.clone()), 1),
        (
            PeriodAtom::ArchRs {
                m,
                left: l.arch.clone(),
                right: r.arch.clone(),
            },
            1,
        ),
        (PeriodAtom::Gauss(gauss_label(right)), 1),
    ]
    .into_iter()
    .collect();
    Ok(Some(whole(
        atom,
        exp,
        out,
        FieldTag::e_of(left).join(&FieldTag::e_of(right)),
    )))
}

fn gauss_self_dual(ctx: &Ctx, atom: &PeriodAtom, exp: i64) -> Result<Option<Rewrite>, PeriodError> {
    let PeriodAtom::Gauss(label) = atom else {
        return Ok(None);
    };
    for (rep, info) in ctx.reps() {
        if *label == gauss_label(rep) && info.self_dual {
            return Ok(Some(whole(
                atom,
                exp,
                PeriodMonomial::one(),
                FieldTag::e_of(rep),
            )));
        }
    }
    Ok(None)
}

fn whittaker_from_asai(
    ctx: &Ctx,
    atom: &PeriodAtom,
    exp: i64,
) -> Result<Option<Rewrite>, PeriodError> {
    let PeriodAtom::Whittaker(rep) = atom else {
        return Ok(None);
    };
    let Ok(info) = ctx.rep(rep) else {
        return Ok(None);
    };
    if !matches!(info.kind, RepKind::Induced { .. }) {
        return Ok(None);
    }
    let mut out = lval(HalfInt::int(1), LObject::Asai { rep: rep.clone() });
    out.mul_atom(PeriodAtom::ArchAsai(info.arch.clone()), -1);
    Ok(Some(whole(atom, exp, out, FieldTag::e_of(rep))))
}

fn whittaker_isobaric(
    ctx: &Ctx,
    atom: &PeriodAtom,
    exp: i64,
) -> Result<Option<Rewrite>, PeriodError> {
    let PeriodAtom::Whittaker(rep) = atom else {
        return Ok(None);
    };
    let Ok(RepInfo {
        kind: RepKind::Isobaric { summands },
        ..
    }) = ctx.rep(rep)
    else {
        return Ok(None);
    };
    let mut out = PeriodMonomial::one();
    for (i, s) in summands.iter().enumerate() {
        if !ctx.rep(&s.plain)?.self_dual {
            return Err(PeriodError::InvalidParam(format!(
                "{} is not conjugate self-dual",
                s.plain
            )));
        }
        out.mul_atom(PeriodAtom::Whittaker(s.twisted.clone()), 1);
        for t in &summands[i + 1..] {
            out = out.mul(&lval(
                HalfInt::int(1),
                LObject::RankinSelberg {
                    left: s.plain.clone(),
                    right: t.plain.clone(),
                    dual: true,
                },
            ));
        }
    }
    Ok(Some(whole(
        atom,
        exp,
        out,
        FieldTag::e_of(rep).join(&FieldTag::e_of(PHI)),
    )))
}

fn whittaker_twist(ctx: &Ctx, atom: &PeriodAtom, exp: i64) -> Result<Option<Rewrite>, PeriodError> {
    let PeriodAtom::Whittaker(label) = atom else {
        return Ok(None);
    };
    for (_, info) in ctx.reps() {
        let RepKind::Isobaric { summands } = &info.kind else {
            continue;
        };
        if let Some(s) = summands.iter().find(|s| &s.twisted == label) {
            let mut out = PeriodMonomial::atom(PeriodAtom::Whittaker(s.alg.clone()));
            if (info.rank - s.rank) % 2 == 1 {
                let k = (s.rank * (s.rank.saturating_sub(1)) / 2) as i64;
                out.mul_atom(PeriodAtom::Gauss(phi_inv_gauss()), k);
            }
            return Ok(Some(whole(atom, exp, out, FieldTag::e_of(PHI))));
        }
    }
    Ok(None)
}

fn whittaker_hecke(ctx: &Ctx, atom: &PeriodAtom, exp: i64) -> Result<Option<Rewrite>, PeriodError> {
    let PeriodAtom::Whittaker(rep) = atom else {
        return Ok(None);
    };
    let Ok(info) = ctx.rep(rep) else {
        return Ok(None);
    };
    Ok(match &info.kind {
        RepKind::Hecke { chi } => Some(whole(
            atom,
            exp,
            PeriodMonomial::one(),
            FieldTag::e_of(chi),
        )),
        _ => None,
    })
}

fn restriction_lift(ctx: &Ctx, atom: &PeriodAtom, exp: i64) -> Result<Option<Rewrite>, PeriodError> {
    let Some((a, e)) = single_cm(atom) else {
        return Ok(None);
    };
    let CharOp::Restrict(to) = &a.op else {
        return Ok(None);
    };
    let Some((_, half)) = ctx.flat_parent(to) else {
        return Ok(None);
    };
    let up = Emb::new(&a.home, e.sigma, vec![e.idx[0]], false);
    let p = a.plain();
    let out: PeriodMonomial = [
        (cm1(p.clone(), up.clone()), 1),
        (cm1(p.translated(half, true), up), 1),
    ]
    .into_iter()
    .collect();
    Ok(Some(whole(atom, exp, out, FieldTag::e_of(&a.name))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::period::context::CharKind;

    fn ctx1() -> Ctx {
        let mut c = Ctx::new(1);
        c.add_char(
            "χ",
            BASE,
            CharKind::Algebraic {
                types: vec![-1],
                self_dual: false,
            },
        );
        c
    }

    fn l_of(m: i64, name: &str) -> PeriodAtom {
        PeriodAtom::lvalue(
            HalfInt::int(m),
            LObject::Hecke {
                chi: CharExpr::atom(CharAtom::new(name, BASE)),
                field: BASE.into(),
            },
        )
    }

    #[test]
    fn blasius_at_one() {
        let c = ctx1();
        let out = rule_blasius(&c, &l_of(1, "χ")).unwrap();
        assert_eq!(out.two_pi_exponent(), 1);
        assert_eq!(out.to_string(), "(2πi) · p(χ̌, ι1)");
    }

    #[test]
    fn blasius_at_zero_has_no_two_pi() {
        let mut c = Ctx::new(1);
        c.add_char(
            "χ",
            BASE,
            CharKind::Algebraic {
                types: vec![2],
                self_dual: false,
            },
        );
        let out = rule_blasius(&c, &l_of(0, "χ")).unwrap();
        assert_eq!(out.two_pi_exponent(), 0);
        assert_eq!(out.len(), 1);
    }

    #[test]
    fn blasius_rejects_norm_and_outside_window() {
        let c = ctx1();
        assert!(matches!(
            rule_blasius(&c, &l_of(1, crate::period::NORM)),
            Err(PeriodError::NotCritical(_))
        ));
        assert!(matches!(
            rule_blasius(&c, &l_of(2, "χ")),
            Err(PeriodError::NotCritical(_))
        ));
    }

    #[test]
    fn zeta_rules_respect_parity() {
        let c = Ctx::new(3);
        let z = |m| {
            PeriodAtom::lvalue(
                HalfInt::int(m),
                LObject::Zeta {
                    field: "F⁺".into(),
                    deg: 1,
                },
            )
        };
        let one = PeriodMonomial::one();
        let r = Rule::ZetaEven.apply(&c, &z(2), 1, &one).unwrap().unwrap();
        assert_eq!(r.add.two_pi_exponent(), 2);
        assert!(Rule::ZetaEven.apply(&c, &z(3), 1, &one).unwrap().is_none());
        let e = PeriodAtom::lvalue(
            HalfInt::int(1),
            LObject::QuadEps {
                field: BASE.into(),
                deg: 3,
            },
        );
        let r = Rule::QuadraticOdd.apply(&c, &e, 1, &one).unwrap().unwrap();
        assert_eq!(r.add.two_pi_exponent(), 3);
        assert_eq!(r.tag.to_string(), "F^Gal");
    }

    #[test]
    fn norm_and_phi_pairing() {
        let c = Ctx::new(1);
        let one = PeriodMonomial::one();
        let e = Emb::new(BASE, 1, vec![], false);
        let n = cm1(CharAtom::new(crate::period::NORM, BASE), e.clone());
        let r = Rule::NormCharacter.apply(&c, &n, 1, &one).unwrap().unwrap();
        assert_eq!(r.add.two_pi_exponent(), -1);
        let phi = CharAtom::new(PHI, BASE).checked();
        let a = cm1(phi.clone(), e.clone());
        let b = cm1(phi, c.conj(&e).unwrap());
        let mono: PeriodMonomial = [(a.clone(), 1), (b, 1)].into_iter().collect();
        let r = Rule::PhiPairing.apply(&c, &a, 1, &mono).unwrap().unwrap();
        assert!(mono.div(&r.remove).mul(&r.add) == PeriodMonomial::two_pi_i(1));
    }
}
