//! Staged rewriting, relation solving and derivation traces.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use super::atom::{FieldTag, PeriodAtom, PeriodMonomial};
use super::context::Ctx;
use super::rules::Rule;
use super::PeriodError;

pub const STEP_LIMIT: usize = 200_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: Rule,
    pub tag: FieldTag,
    pub atom: PeriodAtom,
    pub remove: PeriodMonomial,
    pub add: PeriodMonomial,
}

/// A rewrite run from `start` to `end`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub label: String,
    pub start: PeriodMonomial,
    pub steps: Vec<Step>,
    pub end: PeriodMonomial,
}

impl Segment {
    pub fn trivial(label: &str, m: &PeriodMonomial) -> Segment {
        Segment {
            label: label.to_string(),
            start: m.clone(),
            steps: Vec::new(),
            end: m.clone(),
        }
    }

    pub fn replay(&self) -> PeriodMonomial {
        let mut m = self.start.clone();
        for s in &self.steps {
            m.mul_assign_pow(&s.remove, -1);
            m.mul_assign_pow(&s.add, 1);
        }
        m
    }

    pub fn tag(&self) -> FieldTag {
        self.steps.iter().fold(FieldTag::q(), |t, s| t.join(&s.tag))
    }
}

/// Rewrites `start` through each stage in turn, each to a fixpoint.
///
/// Within a stage the atoms are visited in canonical order and each atom is
/// offered to the stage's rules in the listed order.
pub fn rewrite(
    ctx: &Ctx,
    label: &str,
    start: &PeriodMonomial,
    stages: &[&[Rule]],
) -> Result<Segment, PeriodError> {
    let mut cur = start.clone();
    let mut steps = Vec::new();
    for stage in stages {
        loop {
            let mut changed = false;
            let atoms: Vec<PeriodAtom> = cur.iter().map(|(a, _)| a.clone()).collect();
            for atom in atoms {
                let exp = cur.exponent(&atom);
                if exp == 0 {
                    continue;
                }
                for &rule in stage.iter() {
                    let Some(rw) = rule.apply(ctx, &atom, exp, &cur).map_err(|e| match e {
                        PeriodError::NotCritical(_) | PeriodError::InvalidParam(_) => e,
                        other => PeriodError::Engine {
                            rule: rule.name().to_string(),
                            msg: other.to_string(),
                        },
                    })?
                    else {
                        continue;
                    };
                    cur.mul_assign_pow(&rw.remove, -1);
                    cur.mul_assign_pow(&rw.add, 1);
                    steps.push(Step {
                        rule,
                        tag: rw.tag,
                        atom: atom.clone(),
                        remove: rw.remove,
                        add: rw.add,
                    });
                    if steps.len() > STEP_LIMIT {
                        return Err(PeriodError::StepLimit(STEP_LIMIT));
                    }
                    changed = true;
                    break;
                }
            }
            if !changed {
                break;
            }
        }
    }
    Ok(Segment {
        label: label.to_string(),
        start: start.clone(),
        steps,
        end: cur,
    })
}

/// Two rewrite runs from the same start; their ends are therefore related.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub label: String,
    pub lhs: Segment,
    pub rhs: Segment,
}

impl Relation {
    /// lhs.end / rhs.end, which is ∼ 1.
    pub fn quotient(&self) -> PeriodMonomial {
        self.lhs.end.div(&self.rhs.end)
    }
}

/// The combination ∏ quotient_r^{power_r} ∼ 1, normalized and solved for a target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solve {
    pub label: String,
    pub powers: Vec<i64>,
    pub target: PeriodMonomial,
    pub segment: Segment,
    pub exponent: i64,
    pub residual: PeriodMonomial,
}

impl Solve {
    /// Given X ∼ 1 with X = target^t (2πi)^u R and t = ±1, reads off
    /// target ∼ (2πi)^{−u t} R^{−t}. With an empty target X itself must be (2πi)^u R.
    pub fn new(
        ctx: &Ctx,
        label: &str,
        relations: &[Relation],
        powers: &[i64],
        target: &PeriodMonomial,
        normalize: &[&[Rule]],
    ) -> Result<Solve, PeriodError> {
        if relations.len() != powers.len() {
            return Err(PeriodError::Mismatch("one power per relation".into()));
        }
        let mut x = PeriodMonomial::one();
        for (r, &p) in relations.iter().zip(powers) {
            x.mul_assign_pow(&r.quotient(), p);
        }
        let segment = rewrite(ctx, label, &x, normalize)?;
        let (exponent, residual) = read_off(&segment.end, target)?;
        Ok(Solve {
            label: label.to_string(),
            powers: powers.to_vec(),
            target: target.clone(),
            segment,
            exponent,
            residual,
        })
    }
}

fn read_off(x: &PeriodMonomial, target: &PeriodMonomial) -> Result<(i64, PeriodMonomial), PeriodError> {
    let t = match target.iter().next() {
        None => 1,
        Some((a, e)) => {
            let k = x.exponent(a);
            if k % e != 0 {
                return Err(PeriodError::Mismatch(format!(
                    "{} occurs to power {} in {}",
                    a, k, x
                )));
            }
            k / e
        }
    };
    if t != 1 && t != -1 {
        return Err(PeriodError::Mismatch(format!(
            "target {} occurs to power {} in {}",
            target, t, x
        )));
    }
    let rest = x.div(&target.pow(t));
    for (a, _) in target.iter() {
        if rest.exponent(a) != 0 {
            return Err(PeriodError::Mismatch(format!(
                "{} is not a power of {}",
                x, target
            )));
        }
    }
    let u = rest.two_pi_exponent();
    Ok((-u * t, rest.without_two_pi().pow(-t)))
}

/// A derived rule used by a trace, with the exponent it was certified at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub goal: String,
    pub params: BTreeMap<String, i64>,
    pub exponent: i64,
    pub matched: bool,
}

#[derive(Clone, Debug)]
pub struct DerivationTrace {
    pub goal: String,
    pub params: BTreeMap<String, i64>,
    pub relations: Vec<Relation>,
    pub solves: Vec<Solve>,
    pub exponent: i64,
    pub residual: PeriodMonomial,
    pub assumptions: BTreeSet<String>,
    pub certificates: Vec<Certificate>,
    pub expected_exponent: i64,
    pub expected_residual: PeriodMonomial,
}

impl DerivationTrace {
    pub fn segments(&self) -> impl Iterator<Item = &Segment> {
        self.relations
            .iter()
            .flat_map(|r| [&r.lhs, &r.rhs])
            .chain(self.solves.iter().map(|s| &s.segment))
    }

    pub fn steps(&self) -> impl Iterator<Item = (&str, &Step)> {
        self.segments()
            .flat_map(|s| s.steps.iter().map(move |st| (s.label.as_str(), st)))
    }

    pub fn tag(&self) -> FieldTag {
        self.segments().fold(FieldTag::q(), |t, s| t.join(&s.tag()))
    }

    /// Every solve agrees with the closed form, and every certified rule did too.
    pub fn matches(&self) -> bool {
        !self.solves.is_empty()
            && self.solves.iter().all(|s| {
                s.exponent == self.expected_exponent && s.residual == self.expected_residual
            })
            && self.exponent == self.expected_exponent
            && self.residual == self.expected_residual
            && self.certificates.iter().all(|c| c.matched)
    }

    /// Replays every segment and re-solves every combination from the replayed ends.
    pub fn replay(&self) -> bool {
        if !self.segments().all(|s| s.replay() == s.end) {
            return false;
        }
        if !self.relations.iter().all(|r| r.lhs.start == r.rhs.start) {
            return false;
        }
        self.solves.iter().all(|s| {
            let mut x = PeriodMonomial::one();
            for (r, &p) in self.relations.iter().zip(&s.powers) {
                x.mul_assign_pow(&r.lhs.replay().div(&r.rhs.replay()), p);
            }
            x == s.segment.start
                && read_off(&s.segment.replay(), &s.target).ok()
                    == Some((s.exponent, s.residual.clone()))
        })
    }

    pub fn to_json(&self) -> Value {
        let steps: Vec<Value> = self
            .steps()
            .map(|(seg, s)| {
                json!({
                    "segment": seg,
                    "rule": s.rule.name(),
                    "tag": s.tag.to_string(),
                    "atom": s.atom.to_string(),
                    "removed": s.remove.to_string(),
                    "monomial": s.add.to_string(),
                })
            })
            .collect();
        let relations: Vec<Value> = self
            .relations
            .iter()
            .map(|r| {
                json!({
                    "label": r.label,
                    "start": r.lhs.start.to_string(),
                    "lhs": r.lhs.end.to_string(),
                    "rhs": r.rhs.end.to_string(),
                })
            })
            .collect();
        let solves: Vec<Value> = self
            .solves
            .iter()
            .map(|s| {
                json!({
                    "label": s.label,
                    "powers": s.powers,
                    "target": s.target.to_string(),
                    "normal_form": s.segment.end.to_string(),
                    "exponent": s.exponent,
                    "residual": s.residual.to_string(),
                })
            })
            .collect();
        let certificates: Vec<Value> = self
            .certificates
            .iter()
            .map(|c| {
                json!({
                    "goal": c.goal,
                    "params": c.params,
                    "exponent": c.exponent,
                    "matched": c.matched,
                })
            })
            .collect();
        json!({
            "goal": self.goal,
            "params": self.params,
            "steps": steps,
            "relations": relations,
            "solves": solves,
            "exponent": self.exponent,
            "expected_exponent": self.expected_exponent,
            "residual": self.residual.to_string(),
            "expected_residual": self.expected_residual.to_string(),
            "assumptions": self.assumptions.iter().collect::<Vec<_>>(),
            "tag": self.tag().to_string(),
            "certificates": certificates,
            "matched": self.matches(),
        })
    }
}
