//! Derivations of the (2πi)-exponent identities.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use once_cell::sync::Lazy;
use parking_lot::Mutex;

use super::atom::{CharAtom, CharExpr, Emb, HalfInt, LObject, PeriodAtom, PeriodMonomial};
use super::context::{CharKind, Ctx, FieldShape, RepInfo, RepKind, Summand, BASE};
use super::cycle::CycleDatum;
use super::engine::{rewrite, Certificate, DerivationTrace, Relation, Solve};
use super::rules::Rule::{self, *};
use super::PeriodError;
use crate::weights::IsobaricShape;

const FACTOR: &[Rule] = &[AsaiInduced, AsaiIsobaric, RsInduced, RsIsobaricHecke, RsHecke];
const ANALYTIC: &[Rule] = &[Blasius, ZetaEven, QuadraticOdd];
const STRUCT: &[Rule] = &[
    FiniteOrder,
    Partition,
    Multiplicativity,
    RestrictionLift,
    NormCollapse,
];
const GALOIS: &[Rule] = &[Conjugation, GaloisTranslation];
const PAIR: &[Rule] = &[NormCharacter, PhiPairing, SelfDualPairing];
const INDUCED: &[&[Rule]] = &[FACTOR, ANALYTIC, STRUCT, GALOIS, PAIR];
const NORMALIZE: &[&[Rule]] = &[&[NormCharacter, PhiPairing, SelfDualCancel]];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Goal {
    AsaiInduced,
    RsInduced,
    ArchAsai,
    ArchRs,
    ThmA,
    ThmB,
    ThmC,
    ThmE,
    Delta,
    IsobaricWhittaker,
}

impl Goal {
    pub fn all() -> [Goal; 10] {
        [
            Goal::AsaiInduced,
            Goal::RsInduced,
            Goal::ArchAsai,
            Goal::ArchRs,
            Goal::ThmA,
            Goal::ThmB,
            Goal::ThmC,
            Goal::ThmE,
            Goal::Delta,
            Goal::IsobaricWhittaker,
        ]
    }

    pub fn name(self) -> &'static str {
        match self {
            Goal::AsaiInduced => "asai-induced",
            Goal::RsInduced => "rs-induced",
            Goal::ArchAsai => "arch-asai",
            Goal::ArchRs => "arch-rs",
            Goal::ThmA => "ThmA",
            Goal::ThmB => "ThmB",
            Goal::ThmC => "ThmC",
            Goal::ThmE => "ThmE",
            Goal::Delta => "Delta",
            Goal::IsobaricWhittaker => "isobaric-whittaker",
        }
    }

    pub fn uses_m(self) -> bool {
        matches!(
            self,
            Goal::RsInduced | Goal::ArchRs | Goal::ThmA | Goal::ThmC | Goal::ThmE
        )
    }
}

impl fmt::Display for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Goal {
    type Err = PeriodError;

    fn from_str(s: &str) -> Result<Goal, PeriodError> {
        let key: String = s
            .chars()
            .filter(|c| c.is_alphanumeric())
            .collect::<String>()
            .to_lowercase();
        Goal::all()
            .into_iter()
            .find(|g| {
                g.name()
                    .chars()
                    .filter(|c| c.is_alphanumeric())
                    .collect::<String>()
                    .to_lowercase()
                    == key
            })
            .ok_or_else(|| PeriodError::InvalidParam(format!("unknown goal {:?}", s)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Params {
    pub n: u32,
    pub d: u32,
    pub m: i64,
    pub l: Option<i64>,
    pub parts: Option<Vec<u32>>,
}

/// The closed-form exponent of a goal; `None` when it is not an integer or the goal has none.
pub fn closed_form(goal: Goal, n: i64, d: i64, m: i64, l: i64) -> Option<i64> {
    Some(match goal {
        Goal::AsaiInduced => n * (n + 1) * d / 2,
        Goal::RsInduced => (2 * m + 1) * d * n * (n - 1) / 2,
        Goal::ArchAsai | Goal::ThmB => d * n,
        Goal::ArchRs | Goal::ThmA => m * d * n * (n - 1) - d * (n - 1) * (n - 2) / 2,
        Goal::ThmC => m * d * n * (n - 1) - d * n * (n + 1) / 2,
        Goal::ThmE => d * (m - l) * n * (n - 1),
        Goal::Delta => d * n * (n + 1) / 2,
        Goal::IsobaricWhittaker => 0,
    })
}

fn check_nd(n: u32, d: u32) -> Result<(), PeriodError> {
    if n < 2 {
        return Err(PeriodError::InvalidParam(format!("n = {} must be at least 2", n)));
    }
    if d < 1 {
        return Err(PeriodError::InvalidParam("d must be at least 1".into()));
    }
    Ok(())
}

fn params(pairs: &[(&str, i64)]) -> BTreeMap<String, i64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn lv(point: HalfInt, obj: LObject) -> PeriodAtom {
    PeriodAtom::lvalue(point, obj)
}

fn asai(rep: &str) -> PeriodAtom {
    lv(HalfInt::int(1), LObject::Asai { rep: rep.into() })
}

fn rs(m: i64, left: &str, right: &str) -> PeriodAtom {
    lv(
        HalfInt::half_plus(m),
        LObject::RankinSelberg {
            left: left.into(),
            right: right.into(),
            dual: false,
        },
    )
}

fn mono(items: &[(PeriodAtom, i64)]) -> PeriodMonomial {
    items.iter().cloned().collect()
}

/// a_i = n − i: the simplest strictly decreasing infinity-type.
fn asai_types(n: u32) -> Vec<i64> {
    (1..=n as i64).map(|i| n as i64 - i).collect()
}

/// Interlaced types for ranks (N, N−1): a_i = 2K(N−i), b_j = −K(2j−1).
fn rs_types(big_n: u32, m: i64) -> (Vec<i64>, Vec<i64>) {
    let k = m.abs() + 1;
    let nn = big_n as i64;
    (
        (1..=nn).map(|i| 2 * k * (nn - i)).collect(),
        (1..nn).map(|j| -k * (2 * j - 1)).collect(),
    )
}

fn add_induced(
    ctx: &mut Ctx,
    rep: &str,
    chi: &str,
    field: &str,
    cycle: CycleDatum,
    types: Vec<i64>,
    arch: &str,
) {
    let n = cycle.n();
    ctx.add_cyclic(field, cycle);
    ctx.add_char(
        chi,
        field,
        CharKind::Algebraic {
            types,
            self_dual: true,
        },
    );
    ctx.add_rep(
        rep,
        RepInfo {
            rank: n,
            arch: arch.into(),
            self_dual: true,
            kind: RepKind::Induced { chi: chi.into() },
        },
    );
}

fn add_abstract(ctx: &mut Ctx, rep: &str, rank: u32, arch: &str, self_dual: bool) {
    ctx.add_rep(
        rep,
        RepInfo {
            rank,
            arch: arch.into(),
            self_dual,
            kind: RepKind::Abstract,
        },
    );
}

/// ∏_σ ∏_i p(χ̌, ι_{σ,i})^{i−1} p(χ̌, ῑ_{σ,i})^{r−i}.
fn staircase(chi: &str, field: &str, r: u32, d: u32) -> PeriodMonomial {
    let c = CharExpr::atom(CharAtom::new(chi, field).checked());
    let mut out = PeriodMonomial::one();
    for sigma in 1..=d {
        for i in 1..=r {
            for (conj, e) in [(false, i as i64 - 1), (true, (r - i) as i64)] {
                out.mul_atom(
                    PeriodAtom::cm(c.clone(), [Emb::new(field, sigma, vec![i], conj)]),
                    e,
                );
            }
        }
    }
    out
}

struct Builder {
    ctx: Ctx,
    relations: Vec<Relation>,
    solves: Vec<Solve>,
    assumptions: BTreeSet<String>,
    certificates: Vec<Certificate>,
}

impl Builder {
    fn new(ctx: Ctx) -> Builder {
        Builder {
            ctx,
            relations: Vec::new(),
            solves: Vec::new(),
            assumptions: BTreeSet::new(),
            certificates: Vec::new(),
        }
    }

    fn relation(
        &mut self,
        label: &str,
        start: &PeriodMonomial,
        lhs: &[&[Rule]],
        rhs: &[&[Rule]],
    ) -> Result<(), PeriodError> {
        let l = rewrite(&self.ctx, &format!("{}.lhs", label), start, lhs)?;
        let r = rewrite(&self.ctx, &format!("{}.rhs", label), start, rhs)?;
        self.relations.push(Relation {
            label: label.into(),
            lhs: l,
            rhs: r,
        });
        Ok(())
    }

    fn solve(
        &mut self,
        label: &str,
        powers: &[i64],
        target: &PeriodMonomial,
        normalize: bool,
    ) -> Result<(), PeriodError> {
        let s = Solve::new(
            &self.ctx,
            label,
            &self.relations,
            powers,
            target,
            if normalize { NORMALIZE } else { &[] },
        )?;
        self.solves.push(s);
        Ok(())
    }

    fn certify_arch_asai(&mut self, rank: u32, d: u32) -> Result<(), PeriodError> {
        let c = arch_asai_certificate(rank, d)?;
        self.ctx.certify_arch_asai(rank, c.exponent);
        self.assumptions.extend(c.assumptions.iter().cloned());
        self.certificates.push(Certificate {
            goal: Goal::ArchAsai.name().into(),
            params: params(&[("n", rank as i64), ("d", d as i64), ("m", 1)]),
            exponent: c.exponent,
            matched: c.matched,
        });
        Ok(())
    }

    fn certify_arch_rs(
        &mut self,
        n: u32,
        m: i64,
        d: u32,
        left: &str,
        right: &str,
    ) -> Result<(), PeriodError> {
        let c = arch_rs_certificate(n, m, d)?;
        self.ctx.certify_arch_rs(m, left, right, c.exponent);
        self.assumptions.extend(c.assumptions.iter().cloned());
        self.certificates.push(Certificate {
            goal: Goal::ArchRs.name().into(),
            params: params(&[("n", n as i64), ("m", m), ("d", d as i64)]),
            exponent: c.exponent,
            matched: c.matched,
        });
        Ok(())
    }

    fn finish(
        self,
        goal: Goal,
        params: BTreeMap<String, i64>,
        expected_exponent: i64,
        expected_residual: PeriodMonomial,
    ) -> DerivationTrace {
        let (exponent, residual) = self
            .solves
            .first()
            .map(|s| (s.exponent, s.residual.clone()))
            .unwrap_or((0, PeriodMonomial::one()));
        DerivationTrace {
            goal: goal.name().into(),
            params,
            relations: self.relations,
            solves: self.solves,
            exponent,
            residual,
            assumptions: self.assumptions,
            certificates: self.certificates,
            expected_exponent,
            expected_residual,
        }
    }
}

#[derive(Clone, Debug)]
struct Cert {
    exponent: i64,
    matched: bool,
    assumptions: BTreeSet<String>,
}

static ARCH_ASAI: Lazy<Mutex<HashMap<(u32, u32), Cert>>> = Lazy::new(|| Mutex::new(HashMap::new()));
static ARCH_RS: Lazy<Mutex<HashMap<(u32, i64, u32), Cert>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn arch_asai_certificate(rank: u32, d: u32) -> Result<Cert, PeriodError> {
    if let Some(c) = ARCH_ASAI.lock().get(&(rank, d)) {
        return Ok(c.clone());
    }
    let t = derive_arch_asai_with(rank, d, 1)?;
    let c = Cert {
        exponent: t.exponent,
        matched: t.matches(),
        assumptions: t.assumptions.clone(),
    };
    ARCH_ASAI.lock().insert((rank, d), c.clone());
    Ok(c)
}

fn arch_rs_certificate(n: u32, m: i64, d: u32) -> Result<Cert, PeriodError> {
    if let Some(c) = ARCH_RS.lock().get(&(n, m, d)) {
        return Ok(c.clone());
    }
    let t = derive_arch_rs(n, m, d)?;
    let c = Cert {
        exponent: t.exponent,
        matched: t.matches(),
        assumptions: t.assumptions.clone(),
    };
    ARCH_RS.lock().insert((n, m, d), c.clone());
    Ok(c)
}

/// L(1, As Π_χ) for χ on a cyclic extension of degree n with the standard cycle.
pub fn derive_asai_induced(n: u32, d: u32) -> Result<DerivationTrace, PeriodError> {
    check_nd(n, d)?;
    derive_asai_induced_with(&CycleDatum::standard(n), &asai_types(n), d)
}

/// As `derive_asai_induced`, for any generator cycle of the Galois group and
/// any strictly decreasing infinity-type.
pub fn derive_asai_induced_with(
    cycle: &CycleDatum,
    types: &[i64],
    d: u32,
) -> Result<DerivationTrace, PeriodError> {
    let n = cycle.n();
    if types.len() != n as usize || types.windows(2).any(|w| w[0] <= w[1]) {
        return Err(PeriodError::InvalidParam(format!(
            "infinity-type {:?} is not strictly decreasing of length {}",
            types, n
        )));
    }
    check_nd(n.max(2), d)?;
    let mut ctx = Ctx::new(d);
    add_induced(&mut ctx, "Π_χ", "χ", "L", cycle.clone(), types.to_vec(), "Π_χ,∞");
    let q = PeriodMonomial::atom(asai("Π_χ"));
    let mut b = Builder::new(ctx);
    b.relation("asai", &q, &[], INDUCED)?;
    b.solve("asai", &[1], &q, false)?;
    let nn = n as i64;
    Ok(b.finish(
        Goal::AsaiInduced,
        params(&[("n", nn), ("d", d as i64)]),
        closed_form(Goal::AsaiInduced, nn, d as i64, 0, 0).unwrap_or_default(),
        staircase("χ", "L", n, d),
    ))
}

fn rs_ctx(n: u32, m: i64, d: u32) -> Ctx {
    let (a, b) = rs_types(n, m);
    let mut ctx = Ctx::new(d);
    add_induced(&mut ctx, "Π_χ", "χ", "L", CycleDatum::standard(n), a, "Π_χ,∞");
    add_induced(
        &mut ctx,
        "Π_χ′",
        "χ′",
        "L′",
        CycleDatum::standard(n - 1),
        b,
        "Π_χ′,∞",
    );
    ctx.add_field(
        "LL′",
        FieldShape::Compositum {
            left: "L".into(),
            right: "L′".into(),
        },
    );
    ctx
}

/// L(1/2+m, Π_χ × Π_χ′) for induced representations of ranks n and n−1.
pub fn derive_rs_induced(n: u32, m: i64, d: u32) -> Result<DerivationTrace, PeriodError> {
    check_nd(n, d)?;
    let q = PeriodMonomial::atom(rs(m, "Π_χ", "Π_χ′"));
    let mut b = Builder::new(rs_ctx(n, m, d));
    b.relation("rs", &q, &[], INDUCED)?;
    b.solve("rs", &[1], &q, false)?;
    let (nn, dd) = (n as i64, d as i64);
    Ok(b.finish(
        Goal::RsInduced,
        params(&[("n", nn), ("m", m), ("d", dd)]),
        closed_form(Goal::RsInduced, nn, dd, m, 0).unwrap_or_default(),
        staircase("χ", "L", n, d).mul(&staircase("χ′", "L′", n - 1, d)),
    ))
}

/// a(Π_∞) for Π of rank n, computed with the internal critical shift m = 1.
pub fn derive_arch_asai(n: u32, d: u32) -> Result<DerivationTrace, PeriodError> {
    check_nd(n, d)?;
    derive_arch_asai_with(n, d, 1)
}

/// a(Π_∞) from two routes through L(1/2+m, Π♯ × ·) with Π♯ of rank n+1.
pub fn derive_arch_asai_with(n: u32, d: u32, m: i64) -> Result<DerivationTrace, PeriodError> {
    if n < 1 || d < 1 {
        return Err(PeriodError::InvalidParam(format!("n = {}, d = {}", n, d)));
    }
    let (a, bt) = rs_types(n + 1, m);
    let mut ctx = Ctx::new(d);
    add_induced(&mut ctx, "Π♯", "χ♯", "L♯", CycleDatum::standard(n + 1), a, "Π♯,∞");
    add_induced(
        &mut ctx,
        "Π_χ",
        "χ",
        "L",
        CycleDatum::standard(n),
        bt.clone(),
        "Π_χ,∞",
    );
    ctx.add_field(
        "L♯L",
        FieldShape::Compositum {
            left: "L♯".into(),
            right: "L".into(),
        },
    );
    let mut summands = Vec::new();
    for (j, bj) in bt.iter().enumerate() {
        let name = format!("χ_{}", j + 1);
        ctx.add_char(
            &name,
            BASE,
            CharKind::Algebraic {
                types: vec![*bj],
                self_dual: true,
            },
        );
        ctx.add_rep(
            &name,
            RepInfo {
                rank: 1,
                arch: format!("{},∞", name),
                self_dual: true,
                kind: RepKind::Hecke { chi: name.clone() },
            },
        );
        summands.push(Summand {
            plain: name.clone(),
            twisted: format!("{}ρ_{}", name, j + 1),
            alg: name.clone(),
            rank: 1,
        });
    }
    ctx.add_rep(
        "Π♭",
        RepInfo {
            rank: n,
            arch: "Π_χ,∞".into(),
            self_dual: true,
            kind: RepKind::Isobaric { summands },
        },
    );
    let q1 = mono(&[(rs(m, "Π♯", "Π_χ"), 1), (asai("Π♯"), -1), (asai("Π_χ"), -1)]);
    let q2 = mono(&[(rs(m, "Π♯", "Π♭"), 1)]);
    let axioms: &[&[Rule]] = &[&[AsaiWhittaker, RsWhittaker], &[GaussSelfDual]];
    let mut route2: Vec<&[Rule]> = vec![
        &[RsWhittaker],
        &[GaussSelfDual, WhittakerFromAsai, WhittakerIsobaric],
        &[WhittakerTwist],
        &[WhittakerHecke, GaussPhi],
        &[GaussQuadratic],
    ];
    route2.extend_from_slice(INDUCED);
    let mut b = Builder::new(ctx);
    b.relation("route1", &q1, axioms, INDUCED)?;
    b.relation("route2", &q2, &route2, INDUCED)?;
    if m == 0 {
        b.assumptions
            .insert("Hyp a0: L^S(1/2, Π♯×Π_χ) ≠ 0".into());
        b.assumptions
            .insert("Hyp a1: L^S(1/2, Π♯×Π♭) ≠ 0".into());
    }
    b.solve(
        "arch-asai",
        &[1, -1],
        &PeriodMonomial::atom(PeriodAtom::ArchAsai("Π_χ,∞".into())),
        true,
    )?;
    let (nn, dd) = (n as i64, d as i64);
    Ok(b.finish(
        Goal::ArchAsai,
        params(&[("n", nn), ("d", dd), ("m", m)]),
        closed_form(Goal::ArchAsai, nn, dd, m, 0).unwrap_or_default(),
        PeriodMonomial::one(),
    ))
}

/// p(m, Π_∞, Π′_∞) from the axioms against the induced route.
pub fn derive_arch_rs(n: u32, m: i64, d: u32) -> Result<DerivationTrace, PeriodError> {
    check_nd(n, d)?;
    let mut b = Builder::new(rs_ctx(n, m, d));
    b.certify_arch_asai(n, d)?;
    b.certify_arch_asai(n - 1, d)?;
    let q = mono(&[(rs(m, "Π_χ", "Π_χ′"), 1), (asai("Π_χ"), -1), (asai("Π_χ′"), -1)]);
    b.relation(
        "arch-rs",
        &q,
        &[&[AsaiWhittaker, RsWhittaker], &[GaussSelfDual], &[ArchAsaiDerived]],
        INDUCED,
    )?;
    if m == 0 {
        b.assumptions
            .insert("Cond: L^S(1/2, Π_χ×Π_χ′) ≠ 0".into());
    }
    b.solve(
        "arch-rs",
        &[1],
        &PeriodMonomial::atom(PeriodAtom::ArchRs {
            m,
            left: "Π_χ,∞".into(),
            right: "Π_χ′,∞".into(),
        }),
        true,
    )?;
    let (nn, dd) = (n as i64, d as i64);
    Ok(b.finish(
        Goal::ArchRs,
        params(&[("n", nn), ("m", m), ("d", dd)]),
        closed_form(Goal::ArchRs, nn, dd, m, 0).unwrap_or_default(),
        PeriodMonomial::one(),
    ))
}

fn abstract_pair(n: u32, d: u32) -> Ctx {
    let mut ctx = Ctx::new(d);
    add_abstract(&mut ctx, "Π", n, "Π_∞", true);
    add_abstract(&mut ctx, "Π′", n - 1, "Π′_∞", true);
    ctx
}

const RS_AXIOMS: &[&[Rule]] = &[&[RsWhittaker], &[GaussSelfDual], &[ArchRsDerived]];

fn thm_a(n: u32, m: i64, d: u32) -> Result<DerivationTrace, PeriodError> {
    check_nd(n, d)?;
    let mut b = Builder::new(abstract_pair(n, d));
    b.certify_arch_rs(n, m, d, "Π_∞", "Π′_∞")?;
    let q = mono(&[
        (rs(m, "Π", "Π′"), 1),
        (PeriodAtom::Whittaker("Π".into()), -1),
        (PeriodAtom::Whittaker("Π′".into()), -1),
    ]);
    b.relation("thmA", &q, &[], RS_AXIOMS)?;
    if m == 0 {
        b.assumptions.insert("Cond: L^S(1/2, Π×Π′) ≠ 0".into());
    }
    b.solve("thmA", &[1], &q, false)?;
    let (nn, dd) = (n as i64, d as i64);
    Ok(b.finish(
        Goal::ThmA,
        params(&[("n", nn), ("m", m), ("d", dd)]),
        closed_form(Goal::ThmA, nn, dd, m, 0).unwrap_or_default(),
        PeriodMonomial::one(),
    ))
}

fn thm_b(n: u32, d: u32, parts: &[u32]) -> Result<DerivationTrace, PeriodError> {
    check_nd(n, d)?;
    if parts.is_empty() || parts.contains(&0) || parts.iter().sum::<u32>() != n {
        return Err(PeriodError::InvalidParam(format!(
            "{:?} is not a composition of {}",
            parts, n
        )));
    }
    let mut ctx = Ctx::new(d);
    let mut algs = Vec::new();
    if parts.len() == 1 {
        add_abstract(&mut ctx, "Π′", n, "Π′_∞", true);
        algs.push("Π′".to_string());
    } else {
        let mut summands = Vec::new();
        for (i, &r) in parts.iter().enumerate() {
            let plain = format!("Π_{}", i + 1);
            let alg = format!("Π_{}^alg", i + 1);
            add_abstract(&mut ctx, &plain, r, &format!("{}_∞", plain), true);
            add_abstract(&mut ctx, &alg, r, &format!("{},∞", alg), true);
            summands.push(Summand {
                plain: plain.clone(),
                twisted: format!("Π_{}ρ_{}", i + 1, i + 1),
                alg: alg.clone(),
                rank: r,
            });
            algs.push(alg);
        }
        ctx.add_rep(
            "Π′",
            RepInfo {
                rank: n,
                arch: "Π′_∞".into(),
                self_dual: true,
                kind: RepKind::Isobaric { summands },
            },
        );
    }
    let mut b = Builder::new(ctx);
    let ranks: BTreeSet<u32> = parts.iter().copied().collect();
    for r in ranks {
        b.certify_arch_asai(r, d)?;
    }
    for a in &algs {
        b.assumptions.insert(format!(
            "μ({}) sufficiently regular, or Hyp a0/a1 for {}",
            a, a
        ));
    }
    let q = mono(&[(asai("Π′"), 1), (PeriodAtom::Whittaker("Π′".into()), -1)]);
    b.relation(
        "thmB",
        &q,
        &[],
        &[
            &[AsaiIsobaric, AsaiWhittaker, WhittakerIsobaric],
            &[WhittakerTwist],
            &[GaussPhi],
            &[GaussQuadratic],
            &[ArchAsaiDerived],
        ],
    )?;
    b.solve("thmB", &[1], &q, false)?;
    let (nn, dd) = (n as i64, d as i64);
    let mut p = params(&[("n", nn), ("d", dd)]);
    p.insert("summands".into(), parts.len() as i64);
    Ok(b.finish(
        Goal::ThmB,
        p,
        closed_form(Goal::ThmB, nn, dd, 0, 0).unwrap_or_default(),
        PeriodMonomial::one(),
    ))
}

fn thm_c(n: u32, m: i64, d: u32) -> Result<DerivationTrace, PeriodError> {
    check_nd(n, d)?;
    let mut b = Builder::new(rs_ctx(n, m, d));
    b.certify_arch_rs(n, m, d, "Π_χ,∞", "Π_χ′,∞")?;
    b.certify_arch_asai(n, d)?;
    b.certify_arch_asai(n - 1, d)?;
    let q = mono(&[(rs(m, "Π_χ", "Π_χ′"), 1), (asai("Π_χ"), -1), (asai("Π_χ′"), -1)]);
    b.relation(
        "axioms",
        &q,
        &[],
        &[
            &[RsWhittaker, AsaiWhittaker],
            &[GaussSelfDual],
            &[ArchRsDerived, ArchAsaiDerived],
        ],
    )?;
    b.relation("induced", &q, &[], INDUCED)?;
    if m == 0 {
        b.assumptions
            .insert("Cond: L^S(1/2, Π_χ×Π_χ′) ≠ 0".into());
    }
    b.solve("axioms", &[1, 0], &q, false)?;
    b.solve("induced", &[0, 1], &q, true)?;
    let (nn, dd) = (n as i64, d as i64);
    Ok(b.finish(
        Goal::ThmC,
        params(&[("n", nn), ("m", m), ("d", dd)]),
        closed_form(Goal::ThmC, nn, dd, m, 0).unwrap_or_default(),
        PeriodMonomial::one(),
    ))
}

fn thm_e(n: u32, m: i64, l: i64, d: u32) -> Result<DerivationTrace, PeriodError> {
    check_nd(n, d)?;
    let mut b = Builder::new(abstract_pair(n, d));
    b.certify_arch_rs(n, m, d, "Π_∞", "Π′_∞")?;
    if l != m {
        b.certify_arch_rs(n, l, d, "Π_∞", "Π′_∞")?;
    }
    let q = mono(&[(rs(m, "Π", "Π′"), 1), (rs(l, "Π", "Π′"), -1)]);
    b.relation("thmE", &q, &[], RS_AXIOMS)?;
    if l == 0 {
        b.assumptions.insert("L^S(1/2, Π×Π′) ≠ 0".into());
    }
    b.solve("thmE", &[1], &q, false)?;
    let (nn, dd) = (n as i64, d as i64);
    Ok(b.finish(
        Goal::ThmE,
        params(&[("n", nn), ("m", m), ("l", l), ("d", dd)]),
        closed_form(Goal::ThmE, nn, dd, m, l).unwrap_or_default(),
        PeriodMonomial::one(),
    ))
}

fn delta(n: u32, d: u32) -> Result<DerivationTrace, PeriodError> {
    check_nd(n, d)?;
    let q: PeriodMonomial = (1..=n as i64)
        .map(|j| {
            let obj = if j % 2 == 0 {
                LObject::Zeta {
                    field: "F⁺".into(),
                    deg: d,
                }
            } else {
                LObject::QuadEps {
                    field: BASE.into(),
                    deg: d,
                }
            };
            (lv(HalfInt::int(j), obj), 1)
        })
        .collect();
    let mut b = Builder::new(Ctx::new(d));
    b.relation("delta", &q, &[], &[ANALYTIC])?;
    b.solve("delta", &[1], &q, false)?;
    let (nn, dd) = (n as i64, d as i64);
    Ok(b.finish(
        Goal::Delta,
        params(&[("n", nn), ("d", dd)]),
        closed_form(Goal::Delta, nn, dd, 0, 0).unwrap_or_default(),
        PeriodMonomial::one(),
    ))
}

/// p(Π′) for Π′ = Π_1 ⊞ … ⊞ Π_k with every summand conjugate self-dual.
pub fn derive_isobaric_whittaker(shape: &IsobaricShape) -> Result<DerivationTrace, PeriodError> {
    derive_isobaric_whittaker_flags(shape, &vec![true; shape.k()])
}

/// As `derive_isobaric_whittaker`, with the conjugate self-duality of each summand given.
pub fn derive_isobaric_whittaker_flags(
    shape: &IsobaricShape,
    self_dual: &[bool],
) -> Result<DerivationTrace, PeriodError> {
    if self_dual.len() != shape.k() {
        return Err(PeriodError::InvalidParam(
            "one self-duality flag per summand".into(),
        ));
    }
    let mut ctx = Ctx::new(1);
    let mut summands = Vec::new();
    let mut expected = PeriodMonomial::one();
    for (i, (label, &r)) in shape.labels().iter().zip(shape.parts()).enumerate() {
        let alg = format!("{}^alg", label);
        add_abstract(&mut ctx, label, r, &format!("{}_∞", label), self_dual[i]);
        add_abstract(&mut ctx, &alg, r, &format!("{},∞", alg), self_dual[i]);
        summands.push(Summand {
            plain: label.clone(),
            twisted: format!("{}ρ", label),
            alg: alg.clone(),
            rank: r,
        });
        expected.mul_atom(PeriodAtom::Whittaker(alg), 1);
        for other in &shape.labels()[i + 1..] {
            expected.mul_atom(
                lv(
                    HalfInt::int(1),
                    LObject::RankinSelberg {
                        left: label.clone(),
                        right: other.clone(),
                        dual: true,
                    },
                ),
                1,
            );
        }
    }
    ctx.add_rep(
        "Π′",
        RepInfo {
            rank: shape.n(),
            arch: "Π′_∞".into(),
            self_dual: self_dual.iter().all(|&x| x),
            kind: RepKind::Isobaric { summands },
        },
    );
    let w = PeriodMonomial::atom(PeriodAtom::Whittaker("Π′".into()));
    let mut b = Builder::new(ctx);
    b.relation(
        "isobaric",
        &w,
        &[],
        &[&[WhittakerIsobaric], &[WhittakerTwist], &[GaussPhi], &[GaussQuadratic]],
    )?;
    b.solve("isobaric", &[1], &w, false)?;
    let mut p = params(&[("n", shape.n() as i64), ("k", shape.k() as i64)]);
    p.insert("e".into(), shape.twist_flag() as i64);
    Ok(b.finish(Goal::IsobaricWhittaker, p, 0, expected))
}

/// Dispatches a goal on its parameters.
pub fn derive_goal(goal: Goal, p: &Params) -> Result<DerivationTrace, PeriodError> {
    let (n, d, m) = (p.n, p.d, p.m);
    match goal {
        Goal::AsaiInduced => derive_asai_induced(n, d),
        Goal::RsInduced => derive_rs_induced(n, m, d),
        Goal::ArchAsai => derive_arch_asai(n, d),
        Goal::ArchRs => derive_arch_rs(n, m, d),
        Goal::ThmA => thm_a(n, m, d),
        Goal::ThmB => thm_b(n, d, p.parts.as_deref().unwrap_or(&[n])),
        Goal::ThmC => thm_c(n, m, d),
        Goal::ThmE => {
            let l = p
                .l
                .ok_or_else(|| PeriodError::InvalidParam("ThmE needs ℓ".into()))?;
            thm_e(n, m, l, d)
        }
        Goal::Delta => delta(n, d),
        Goal::IsobaricWhittaker => {
            let parts: Vec<i64> = p
                .parts
                .clone()
                .unwrap_or_else(|| vec![1; n as usize])
                .into_iter()
                .map(|x| x as i64)
                .collect();
            let shape = IsobaricShape::new(&parts)
                .map_err(|e| PeriodError::InvalidParam(e.to_string()))?;
            derive_isobaric_whittaker(&shape)
        }
    }
}

/// The main-theorem goals: ThmA, ThmB, ThmC, ThmE and Delta.
pub fn derive_main_theorems(
    goal: Goal,
    n: u32,
    d: u32,
    m: i64,
    l: Option<i64>,
) -> Result<(i64, DerivationTrace), PeriodError> {
    if !matches!(
        goal,
        Goal::ThmA | Goal::ThmB | Goal::ThmC | Goal::ThmE | Goal::Delta
    ) {
        return Err(PeriodError::InvalidParam(format!(
            "{} is not a main-theorem goal",
            goal
        )));
    }
    let t = derive_goal(
        goal,
        &Params {
            n,
            d,
            m,
            l,
            parts: None,
        },
    )?;
    Ok((t.exponent, t))
}
