//! Fields, characters and representations a derivation talks about.

use std::collections::BTreeMap;

use super::atom::{CharAtom, CharOp, Emb};
use super::cycle::CycleDatum;
use super::PeriodError;

pub const BASE: &str = "F";
pub const PHI: &str = "φ";
pub const NORM: &str = "‖·‖";

pub fn flat_name(field: &str) -> String {
    format!("{}♭", field)
}

pub fn flat_eta(field: &str) -> String {
    format!("η_{{{}/{}♭}}", field, field)
}

#[derive(Clone, Debug)]
pub enum FieldShape {
    Base,
    /// Cyclic CM extension of the base field; ϑ acts on the lifts of each ι by the cycle.
    Cyclic(CycleDatum),
    Compositum { left: String, right: String },
    /// Fixed field of ϑ^{half}c inside a cyclic extension of even degree 2·half.
    Flat { parent: String, half: u32 },
}

#[derive(Clone, Debug)]
pub enum CharKind {
    /// Infinity-type z^{a_i} z̄^{-a_i} at the i-th lift of every ι.
    Algebraic { types: Vec<i64>, self_dual: bool },
    /// φ, of infinity-type z at every ι.
    Phi,
    /// The idelic norm, of infinity-type z z̄.
    Norm,
    /// A quadratic character; its period is algebraic.
    Quadratic,
}

#[derive(Clone, Debug)]
pub struct Summand {
    pub plain: String,
    pub twisted: String,
    pub alg: String,
    pub rank: u32,
}

#[derive(Clone, Debug)]
pub enum RepKind {
    /// Automorphic induction of a Hecke character of a cyclic extension.
    Induced { chi: String },
    Isobaric { summands: Vec<Summand> },
    /// A rank-one representation given by an algebraic Hecke character of the base.
    Hecke { chi: String },
    /// A cuspidal representation with no further structure.
    Abstract,
}

#[derive(Clone, Debug)]
pub struct RepInfo {
    pub rank: u32,
    pub arch: String,
    pub self_dual: bool,
    pub kind: RepKind,
}

impl RepInfo {
    pub fn is_cuspidal(&self) -> bool {
        !matches!(self.kind, RepKind::Isobaric { .. })
    }
}

#[derive(Clone, Debug)]
pub struct Ctx {
    d: u32,
    fields: BTreeMap<String, FieldShape>,
    chars: BTreeMap<String, (String, CharKind)>,
    reps: BTreeMap<String, RepInfo>,
    arch_rank: BTreeMap<String, u32>,
    arch_asai: BTreeMap<u32, i64>,
    arch_rs: BTreeMap<(i64, String, String), i64>,
}

impl Ctx {
    /// A context over a CM base field with d = [F⁺:Q].
    pub fn new(d: u32) -> Ctx {
        let mut fields = BTreeMap::new();
        fields.insert(BASE.to_string(), FieldShape::Base);
        let mut chars = BTreeMap::new();
        chars.insert(PHI.to_string(), (BASE.to_string(), CharKind::Phi));
        chars.insert(NORM.to_string(), (BASE.to_string(), CharKind::Norm));
        Ctx {
            d,
            fields,
            chars,
            reps: BTreeMap::new(),
            arch_rank: BTreeMap::new(),
            arch_asai: BTreeMap::new(),
            arch_rs: BTreeMap::new(),
        }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn add_field(&mut self, name: &str, shape: FieldShape) {
        self.fields.insert(name.to_string(), shape);
    }

    /// Registers a cyclic extension, and for even degree its ♭-subfield with
    /// the quadratic character cutting out the extension.
    pub fn add_cyclic(&mut self, name: &str, cycle: CycleDatum) {
        let n = cycle.n();
        self.add_field(name, FieldShape::Cyclic(cycle));
        if n.is_multiple_of(2) {
            let flat = flat_name(name);
            self.add_field(
                &flat,
                FieldShape::Flat {
                    parent: name.to_string(),
                    half: n / 2,
                },
            );
            self.add_char(&flat_eta(name), &flat, CharKind::Quadratic);
        }
    }

    pub fn compositum(&self, left: &str, right: &str) -> Result<String, PeriodError> {
        self.fields
            .iter()
            .find(|(_, s)| {
                matches!(s, FieldShape::Compositum { left: l, right: r } if l == left && r == right)
            })
            .map(|(k, _)| k.clone())
            .ok_or_else(|| PeriodError::Unknown(format!("compositum of {} and {}", left, right)))
    }

    pub fn reps(&self) -> impl Iterator<Item = (&String, &RepInfo)> {
        self.reps.iter()
    }

    pub fn add_char(&mut self, name: &str, home: &str, kind: CharKind) {
        self.chars
            .insert(name.to_string(), (home.to_string(), kind));
    }

    pub fn add_rep(&mut self, label: &str, info: RepInfo) {
        self.arch_rank.insert(info.arch.clone(), info.rank);
        self.reps.insert(label.to_string(), info);
    }

    pub fn certify_arch_asai(&mut self, rank: u32, exponent: i64) {
        self.arch_asai.insert(rank, exponent);
    }

    pub fn certify_arch_rs(&mut self, m: i64, left: &str, right: &str, exponent: i64) {
        self.arch_rs
            .insert((m, left.to_string(), right.to_string()), exponent);
    }

    pub fn arch_asai_exponent(&self, arch: &str) -> Option<i64> {
        self.arch_rank
            .get(arch)
            .and_then(|r| self.arch_asai.get(r))
            .copied()
    }

    pub fn arch_rs_exponent(&self, m: i64, left: &str, right: &str) -> Option<i64> {
        self.arch_rs
            .get(&(m, left.to_string(), right.to_string()))
            .copied()
    }

    pub fn shape(&self, field: &str) -> Result<&FieldShape, PeriodError> {
        self.fields
            .get(field)
            .ok_or_else(|| PeriodError::Unknown(format!("field {}", field)))
    }

    pub fn char_info(&self, name: &str) -> Result<&(String, CharKind), PeriodError> {
        self.chars
            .get(name)
            .ok_or_else(|| PeriodError::Unknown(format!("character {}", name)))
    }

    pub fn rep(&self, label: &str) -> Result<&RepInfo, PeriodError> {
        self.reps
            .get(label)
            .ok_or_else(|| PeriodError::Unknown(format!("representation {}", label)))
    }

    pub fn cycle(&self, field: &str) -> Result<&CycleDatum, PeriodError> {
        match self.shape(field)? {
            FieldShape::Cyclic(c) => Ok(c),
            _ => Err(PeriodError::Unknown(format!("{} is not cyclic", field))),
        }
    }

    /// Rank over the base field.
    pub fn rank(&self, field: &str) -> Result<u32, PeriodError> {
        Ok(match self.shape(field)? {
            FieldShape::Base => 1,
            FieldShape::Cyclic(c) => c.n(),
            FieldShape::Compositum { left, right } => self.rank(left)? * self.rank(right)?,
            FieldShape::Flat { half, .. } => *half,
        })
    }

    /// One embedding out of each conjugate pair.
    pub fn representatives(&self, field: &str) -> Result<Vec<Emb>, PeriodError> {
        let mut out = Vec::new();
        let shape = self.shape(field)?;
        for sigma in 1..=self.d {
            match shape {
                FieldShape::Base => out.push(Emb::new(field, sigma, vec![], false)),
                FieldShape::Cyclic(c) => {
                    for i in 1..=c.n() {
                        out.push(Emb::new(field, sigma, vec![i], false));
                    }
                }
                FieldShape::Compositum { left, right } => {
                    for i in 1..=self.rank(left)? {
                        for j in 1..=self.rank(right)? {
                            out.push(Emb::new(field, sigma, vec![i, j], false));
                        }
                    }
                }
                FieldShape::Flat { parent, half } => {
                    let c = self.cycle(parent)?;
                    for i in 1..=c.n() {
                        let p = c.pow_apply(*half as i64, i);
                        if i < p {
                            out.push(Emb::new(field, sigma, vec![i, p], false));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn conj(&self, e: &Emb) -> Result<Emb, PeriodError> {
        Ok(match self.shape(&e.field)? {
            FieldShape::Flat { .. } => Emb::new(&e.field, e.sigma, vec![e.idx[1], e.idx[0]], false),
            _ => Emb {
                conj: !e.conj,
                ..e.clone()
            },
        })
    }

    /// e ∘ ϑ^k for an embedding of a cyclic field.
    pub fn translate(&self, e: &Emb, k: u32) -> Result<Emb, PeriodError> {
        let c = self.cycle(&e.field)?;
        Ok(Emb {
            idx: vec![c.pow_apply(k as i64, e.idx[0])],
            ..e.clone()
        })
    }

    /// The restriction of e to a subfield.
    pub fn restrict(&self, e: &Emb, to: &str) -> Result<Emb, PeriodError> {
        if e.field == to {
            return Ok(e.clone());
        }
        let bad = || PeriodError::Unknown(format!("no restriction from {} to {}", e.field, to));
        if to == BASE {
            return match self.shape(&e.field)? {
                FieldShape::Flat { .. } => Err(bad()),
                _ => Ok(Emb::new(BASE, e.sigma, vec![], e.conj)),
            };
        }
        match (self.shape(&e.field)?, self.shape(to)?) {
            (FieldShape::Compositum { left, right }, _) => {
                if left == to {
                    Ok(Emb::new(to, e.sigma, vec![e.idx[0]], e.conj))
                } else if right == to {
                    Ok(Emb::new(to, e.sigma, vec![e.idx[1]], e.conj))
                } else {
                    Err(bad())
                }
            }
            (FieldShape::Cyclic(c), FieldShape::Flat { parent, half }) if parent == &e.field => {
                let i = e.idx[0];
                let p = c.pow_apply(*half as i64, i);
                let idx = if e.conj { vec![p, i] } else { vec![i, p] };
                Ok(Emb::new(to, e.sigma, idx, false))
            }
            _ => Err(bad()),
        }
    }

    pub fn flat_parent(&self, field: &str) -> Option<(&str, u32)> {
        match self.fields.get(field) {
            Some(FieldShape::Flat { parent, half }) => Some((parent, *half)),
            _ => None,
        }
    }

    pub fn is_quadratic(&self, name: &str) -> bool {
        matches!(self.chars.get(name), Some((_, CharKind::Quadratic)))
    }

    pub fn is_phi(&self, name: &str) -> bool {
        matches!(self.chars.get(name), Some((_, CharKind::Phi)))
    }

    pub fn is_norm(&self, name: &str) -> bool {
        matches!(self.chars.get(name), Some((_, CharKind::Norm)))
    }

    pub fn is_self_dual(&self, name: &str) -> bool {
        matches!(
            self.chars.get(name),
            Some((_, CharKind::Algebraic { self_dual: true, .. }))
        )
    }

    fn base_type(&self, name: &str, e: &Emb) -> Result<(i64, i64), PeriodError> {
        let (home, kind) = self.char_info(name)?;
        if &e.field != home {
            return Err(PeriodError::Unknown(format!(
                "{} lives on {}, not {}",
                name, home, e.field
            )));
        }
        let t = match kind {
            CharKind::Algebraic { types, .. } => {
                let i = e.idx.first().copied().unwrap_or(1) as usize;
                let a = *types
                    .get(i - 1)
                    .or(types.first())
                    .ok_or_else(|| PeriodError::Unknown(format!("types of {}", name)))?;
                (a, -a)
            }
            CharKind::Phi => (1, 0),
            CharKind::Norm => (1, 1),
            CharKind::Quadratic => (0, 0),
        };
        Ok(if e.conj { (t.1, t.0) } else { t })
    }

    /// The infinity-type (p, q) = z^p z̄^q of a character atom at an embedding of its field.
    pub fn char_type(&self, a: &CharAtom, e: &Emb) -> Result<(i64, i64), PeriodError> {
        match &a.op {
            CharOp::Plain => {
                let mut x = if a.theta > 0 {
                    self.translate(e, a.theta)?
                } else {
                    e.clone()
                };
                if a.conj {
                    x = self.conj(&x)?;
                }
                let (p, q) = self.base_type(&a.name, &x)?;
                Ok(if a.check { (-q, -p) } else { (p, q) })
            }
            CharOp::Lift(_) => {
                let x = self.restrict(e, &a.home)?;
                self.char_type(&a.plain(), &x)
            }
            CharOp::Restrict(_) => {
                let up = Emb::new(&a.home, e.sigma, vec![e.idx[0]], false);
                let down = Emb::new(&a.home, e.sigma, vec![e.idx[1]], true);
                let (p1, q1) = self.char_type(&a.plain(), &up)?;
                let (p2, q2) = self.char_type(&a.plain(), &down)?;
                Ok((p1 + p2, q1 + q2))
            }
        }
    }
}
