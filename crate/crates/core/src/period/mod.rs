//! Formal ledger of period monomials, directed rewrite rules between them and
//! a derivation engine for (2πi)-exponent identities.

mod atom;
mod context;
mod cycle;
mod derive;
mod engine;
pub mod interp;
mod rules;

pub use atom::{
    CharAtom, CharExpr, CharOp, Emb, FieldTag, HalfInt, LObject, PeriodAtom, PeriodMonomial,
};
pub use context::{
    flat_eta, flat_name, CharKind, Ctx, FieldShape, RepInfo, RepKind, Summand, BASE, NORM, PHI,
};
pub use cycle::{all_cycles, cm_types_induced, count_descents, CycleDatum};
pub use derive::{
    closed_form, derive_arch_asai, derive_arch_asai_with, derive_arch_rs, derive_asai_induced,
    derive_asai_induced_with, derive_goal, derive_isobaric_whittaker,
    derive_isobaric_whittaker_flags, derive_main_theorems, derive_rs_induced, Goal, Params,
};
pub use engine::{rewrite, Certificate, DerivationTrace, Relation, Segment, Solve, Step};
pub use rules::{rule_blasius, rule_cm_relations, rule_zeta_values, Rewrite, Rule};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PeriodError {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("unknown object: {0}")]
    Unknown(String),
    #[error("not critical: {0}")]
    NotCritical(String),
    #[error("rule {rule} failed: {msg}")]
    Engine { rule: String, msg: String },
    #[error("rewriting did not terminate within {0} steps")]
    StepLimit(usize),
    #[error("relation does not determine the target: {0}")]
    Mismatch(String),
}
