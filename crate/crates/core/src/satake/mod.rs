//! Unramified local L-factors and the factorization identities for Asai
//! L-functions of isobaric sums and of automorphic inductions.

mod induced;
mod lemma32;

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::{place_var, tensor_eigenvalues, AlgebraError, EulerFactorDenom, LaurentPoly};

pub use induced::{
    admissible_cases, all_fixed_closed_form, induced_eigenvalues, induced_eigenvalues_with_root,
    prop34_lhs, prop34_rhs, verify_prop34, CAction, InducedDatum,
};
pub use lemma32::{lemma32_sides, verify_lemma32};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SatakeError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Weight(#[from] crate::weights::WeightError),
    #[error("eigenvalue multisets differ in size: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("empty character data")]
    Empty,
    #[error("eigenvalue is not a unit monomial")]
    NotUnit,
    #[error("invalid induced datum: {0}")]
    InvalidDatum(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PlaceKind {
    Split,
    Inert,
}

impl PlaceKind {
    pub fn label(self) -> &'static str {
        match self {
            PlaceKind::Split => "split",
            PlaceKind::Inert => "inert",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnramifiedChar {
    eigenvalue: LaurentPoly,
    conjugate_dual: bool,
}

impl UnramifiedChar {
    pub fn new(eigenvalue: LaurentPoly, conjugate_dual: bool) -> Result<Self, SatakeError> {
        if !eigenvalue.is_unit() {
            return Err(SatakeError::NotUnit);
        }
        Ok(UnramifiedChar {
            eigenvalue,
            conjugate_dual,
        })
    }

    pub fn eigenvalue(&self) -> &LaurentPoly {
        &self.eigenvalue
    }

    /// Eigenvalue at the conjugate place: the inverse when the character is conjugate dual.
    pub fn conjugate_eigenvalue(&self) -> LaurentPoly {
        if self.conjugate_dual {
            self.eigenvalue.inv().expect("unit eigenvalue")
        } else {
            self.eigenvalue.clone()
        }
    }
}

/// γ restricted to F⁺ at an inert place: −1 for γ = η, +1 for γ trivial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GammaTwist {
    sign: i8,
}

impl GammaTwist {
    /// +1 iff n is even.
    pub fn for_rank(n: u32) -> Self {
        GammaTwist {
            sign: if n.is_multiple_of(2) { 1 } else { -1 },
        }
    }

    pub fn sign(self) -> i64 {
        self.sign as i64
    }
}

/// ∏_{a∈A, b∈B} (1 − a·b·X^f).
pub fn rs_local_factor(
    a: &[LaurentPoly],
    b: &[LaurentPoly],
    f: i64,
) -> Result<EulerFactorDenom, SatakeError> {
    if a.is_empty() || b.is_empty() {
        return Err(SatakeError::Empty);
    }
    Ok(EulerFactorDenom::from_eigenvalues(
        &place_var(),
        &tensor_eigenvalues(a, b),
        f,
    )?)
}

/// ∏_{a∈A1, b∈A2} (1 − a·b·X).
pub fn asai_local_factor_split(
    a1: &[LaurentPoly],
    a2: &[LaurentPoly],
) -> Result<EulerFactorDenom, SatakeError> {
    if a1.len() != a2.len() {
        return Err(SatakeError::SizeMismatch(a1.len(), a2.len()));
    }
    rs_local_factor(a1, a2, 1)
}

/// ∏ (1 − χ·γ·X) · ∏_{pairs} (1 − χχ′·X²) over the flattened character list.
pub fn asai_local_factor_inert(
    chars: &[Vec<UnramifiedChar>],
    gamma: GammaTwist,
) -> Result<EulerFactorDenom, SatakeError> {
    let flat: Vec<&LaurentPoly> = chars.iter().flatten().map(|c| c.eigenvalue()).collect();
    if flat.is_empty() {
        return Err(SatakeError::Empty);
    }
    let g = LaurentPoly::from_int(gamma.sign());
    let linear: Vec<LaurentPoly> = flat.iter().map(|x| x.mul(&g)).collect();
    let mut pairs = Vec::new();
    for p in 0..flat.len() {
        for q in p + 1..flat.len() {
            pairs.push(flat[p].mul(flat[q]));
        }
    }
    let x = place_var();
    let lin = EulerFactorDenom::from_eigenvalues(&x, &linear, 1)?;
    if pairs.is_empty() {
        return Ok(lin);
    }
    Ok(lin.mul(&EulerFactorDenom::from_eigenvalues(&x, &pairs, 2)?)?)
}

pub const RENDER_TERM_LIMIT: usize = 2000;

/// The polynomial as text, or a digest of that text when it has more than
/// `RENDER_TERM_LIMIT` terms.
pub fn render(e: &EulerFactorDenom) -> String {
    let terms: usize = e.coeffs().iter().map(LaurentPoly::len).sum();
    if terms <= RENDER_TERM_LIMIT {
        return e.to_string();
    }
    let mut h = Sha256::new();
    h.update(e.to_string().as_bytes());
    let mut out = String::from("sha256:");
    for b in h.finalize() {
        let _ = write!(out, "{:02x}", b);
    }
    let _ = write!(out, " degree={} terms={}", e.degree(), terms);
    out
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct VerificationReport {
    pub case: String,
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
    pub elapsed_ms: f64,
}

impl VerificationReport {
    pub(crate) fn compare(
        case: String,
        start: Instant,
        lhs: &EulerFactorDenom,
        rhs: &EulerFactorDenom,
    ) -> Self {
        let (l, r) = (lhs.normalize(), rhs.normalize());
        VerificationReport {
            case,
            equal: l == r,
            lhs: render(&l),
            rhs: render(&r),
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Symbol;

    fn v(name: &str) -> LaurentPoly {
        LaurentPoly::var(&Symbol::char_value(name))
    }

    #[test]
    fn rs_examples() {
        let one = [LaurentPoly::one()];
        assert_eq!(rs_local_factor(&one, &one, 1).unwrap().to_string(), "1 - X");
        let t = v("st");
        let tinv = t.inv().unwrap();
        assert_eq!(
            rs_local_factor(std::slice::from_ref(&t), &[tinv], 1)
                .unwrap()
                .to_string(),
            "1 - X"
        );
        let got = rs_local_factor(&[v("st1"), v("st2")], &[v("ss1")], 2).unwrap();
        let want = EulerFactorDenom::from_eigenvalues(&place_var(), &[v("st1").mul(&v("ss1"))], 2)
            .unwrap()
            .mul(
                &EulerFactorDenom::from_eigenvalues(&place_var(), &[v("st2").mul(&v("ss1"))], 2)
                    .unwrap(),
            )
            .unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn asai_split_examples() {
        let t1 = v("at1");
        let t2 = v("at2");
        let got = asai_local_factor_split(
            &[t1.clone(), t2.clone()],
            &[t1.inv().unwrap(), t2.inv().unwrap()],
        )
        .unwrap();
        let want = EulerFactorDenom::from_eigenvalues(
            &place_var(),
            &[
                LaurentPoly::one(),
                LaurentPoly::one(),
                t1.mul(&t2.inv().unwrap()),
                t2.mul(&t1.inv().unwrap()),
            ],
            1,
        )
        .unwrap();
        assert_eq!(got, want);
        assert!(asai_local_factor_split(&[t1], &[]).is_err());
    }

    #[test]
    fn asai_inert_examples() {
        let c = |p: LaurentPoly| UnramifiedChar::new(p, true).unwrap();
        let one = asai_local_factor_inert(&[vec![c(LaurentPoly::one())]], GammaTwist::for_rank(1))
            .unwrap();
        assert_eq!(one.to_string(), "1 + X");
        let (x1, x2) = (v("ix1"), v("ix2"));
        let sep = asai_local_factor_inert(
            &[vec![c(x1.clone())], vec![c(x2.clone())]],
            GammaTwist::for_rank(2),
        )
        .unwrap();
        let joint = asai_local_factor_inert(
            &[vec![c(x1.clone()), c(x2.clone())]],
            GammaTwist::for_rank(2),
        )
        .unwrap();
        let want = EulerFactorDenom::from_eigenvalues(&place_var(), &[x1.clone(), x2.clone()], 1)
            .unwrap()
            .mul(&EulerFactorDenom::from_eigenvalues(&place_var(), &[x1.mul(&x2)], 2).unwrap())
            .unwrap();
        assert_eq!(sep, want);
        assert_eq!(joint, want);
        assert!(asai_local_factor_inert(&[], GammaTwist::for_rank(1)).is_err());
    }

    #[test]
    fn unramified_char_requires_unit() {
        assert!(UnramifiedChar::new(v("uc1").add(&LaurentPoly::one()), true).is_err());
        let c = UnramifiedChar::new(v("uc2"), true).unwrap();
        assert!(c.eigenvalue().mul(&c.conjugate_eigenvalue()).is_one());
    }
}
