//! Exact arithmetic: cyclotomic numbers, Laurent polynomials in formal symbols,
//! and Euler-factor denominators.

pub mod cyclotomic;
pub mod euler;
pub mod laurent;
pub mod symbol;

pub use cyclotomic::Cyclotomic;
pub use euler::{place_var, tensor_eigenvalues, EulerFactorDenom};
pub use laurent::{LaurentPoly, Monomial};
pub use num_rational::BigRational;
pub use symbol::{Symbol, SymbolKind};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("residue degree must be positive, got {0}")]
    InvalidResidueDegree(i64),
    #[error("empty eigenvalue multiset")]
    EmptyEigenvalues,
    #[error("place variables differ: {0} vs {1}")]
    PlaceMismatch(String, String),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("symbol {0} already registered with a different kind")]
    SymbolConflict(String),
    #[error("constant term of an Euler factor must be 1")]
    ConstantTerm,
    #[error("polynomial division is not exact")]
    NotDivisible,
    #[error("no square root with constant term 1")]
    NoSquareRoot,
}

/// Canonical form of a Laurent polynomial.
pub fn poly_normalize(p: &LaurentPoly) -> LaurentPoly {
    p.normalize()
}

/// ∏_{e ∈ eigs} (1 − e·X^f) in the standard place variable.
pub fn euler_from_eigenvalues(
    eigs: &[LaurentPoly],
    f: i64,
) -> Result<EulerFactorDenom, AlgebraError> {
    EulerFactorDenom::from_eigenvalues(&place_var(), eigs, f)
}

pub fn euler_product(factors: &[EulerFactorDenom]) -> Result<EulerFactorDenom, AlgebraError> {
    let var = factors
        .first()
        .map(|f| f.var().clone())
        .unwrap_or_else(place_var);
    EulerFactorDenom::product(&var, factors)
}
