//! Reciprocals of unramified local L-factors: polynomials in X with constant term 1.

use std::fmt;

use num_integer::Integer;

use super::laurent::LaurentPoly;
use super::symbol::Symbol;
use super::AlgebraError;

#[derive(Clone, Debug)]
pub struct EulerFactorDenom {
    var: Symbol,
    coeffs: Vec<LaurentPoly>,
    residue_degree: u32,
}

/// The standard place variable X = q_v^{-s}.
pub fn place_var() -> Symbol {
    Symbol::place("X")
}

impl EulerFactorDenom {
    pub fn one(var: &Symbol) -> Self {
        EulerFactorDenom {
            var: var.clone(),
            coeffs: vec![LaurentPoly::one()],
            residue_degree: 1,
        }
    }

    /// Builds from dense X-coefficients; the constant term must be 1.
    pub fn from_coeffs(
        var: &Symbol,
        mut coeffs: Vec<LaurentPoly>,
        residue_degree: u32,
    ) -> Result<Self, AlgebraError> {
        if residue_degree == 0 {
            return Err(AlgebraError::InvalidResidueDegree(0));
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(LaurentPoly::is_zero) {
            coeffs.pop();
        }
        if coeffs.first().is_none_or(|c| !c.is_one()) {
            return Err(AlgebraError::ConstantTerm);
        }
        Ok(EulerFactorDenom {
            var: var.clone(),
            coeffs,
            residue_degree,
        })
    }

    /// ∏_{e ∈ eigs} (1 − e·X^f).
    pub fn from_eigenvalues(
        var: &Symbol,
        eigs: &[LaurentPoly],
        f: i64,
    ) -> Result<Self, AlgebraError> {
        if f <= 0 {
            return Err(AlgebraError::InvalidResidueDegree(f));
        }
        if eigs.is_empty() {
            return Err(AlgebraError::EmptyEigenvalues);
        }
        let f = f as usize;
        let mut out = Self::one(var);
        for e in eigs {
            let mut lin = vec![LaurentPoly::zero(); f + 1];
            lin[0] = LaurentPoly::one();
            lin[f] = e.neg();
            out = out.mul_coeffs(&lin);
        }
        out.residue_degree = f as u32;
        Ok(out)
    }

    pub fn product(var: &Symbol, factors: &[EulerFactorDenom]) -> Result<Self, AlgebraError> {
        let mut acc = Self::one(var);
        let mut first = true;
        for fac in factors {
            acc = acc.mul(fac)?;
            if first {
                acc.residue_degree = fac.residue_degree;
                first = false;
            }
        }
        Ok(acc)
    }

    fn mul_coeffs(&self, other: &[LaurentPoly]) -> Self {
        let mut coeffs = vec![LaurentPoly::zero(); self.coeffs.len() + other.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j].add_mul_assign(a, b);
                }
            }
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(LaurentPoly::is_zero) {
            coeffs.pop();
        }
        EulerFactorDenom {
            var: self.var.clone(),
            coeffs,
            residue_degree: self.residue_degree,
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.var != other.var {
            return Err(AlgebraError::PlaceMismatch(
                self.var.to_string(),
                other.var.to_string(),
            ));
        }
        let mut out = self.mul_coeffs(&other.coeffs);
        out.residue_degree = self.residue_degree.gcd(&other.residue_degree);
        Ok(out)
    }

    pub fn var(&self) -> &Symbol {
        &self.var
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn residue_degree(&self) -> u32 {
        self.residue_degree
    }

    /// Every coefficient put in canonical form (root reduction included).
    pub fn normalize(&self) -> Self {
        let mut coeffs: Vec<LaurentPoly> = self.coeffs.iter().map(LaurentPoly::normalize).collect();
        while coeffs.len() > 1 && coeffs.last().is_some_and(LaurentPoly::is_zero) {
            coeffs.pop();
        }
        EulerFactorDenom {
            var: self.var.clone(),
            coeffs,
            residue_degree: self.residue_degree,
        }
    }

    /// Substitutes X ↦ X^k.
    pub fn inflate(&self, k: u32) -> Self {
        let k = k as usize;
        let mut coeffs = vec![LaurentPoly::zero(); self.degree() * k + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        EulerFactorDenom {
            var: self.var.clone(),
            coeffs,
            residue_degree: self.residue_degree * k as u32,
        }
    }

    /// Exact quotient self / other, or an error if other does not divide self.
    pub fn div_exact(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.var != other.var {
            return Err(AlgebraError::PlaceMismatch(
                self.var.to_string(),
                other.var.to_string(),
            ));
        }
        if other.degree() > self.degree() {
            return Err(AlgebraError::NotDivisible);
        }
        let qn = self.degree() - other.degree();
        let mut q: Vec<LaurentPoly> = Vec::with_capacity(qn + 1);
        for k in 0..=qn {
            let mut c = self.coeffs[k].clone();
            for j in 1..=k.min(other.degree()) {
                c.add_mul_assign(&other.coeffs[j].neg(), &q[k - j]);
            }
            q.push(c);
        }
        for k in qn + 1..=self.degree() {
            let mut c = LaurentPoly::zero();
            for j in k - qn..=other.degree().min(k) {
                c.add_mul_assign(&other.coeffs[j], &q[k - j]);
            }
            if c != self.coeffs[k] {
                return Err(AlgebraError::NotDivisible);
            }
        }
        Ok(EulerFactorDenom {
            var: self.var.clone(),
            coeffs: q,
            residue_degree: 1,
        })
    }

    /// The unique P with P(0) = 1 and P² = self, if it exists.
    pub fn sqrt(&self) -> Result<Self, AlgebraError> {
        if !self.degree().is_multiple_of(2) {
            return Err(AlgebraError::NoSquareRoot);
        }
        let half = rational_half();
        let pn = self.degree() / 2;
        let mut p: Vec<LaurentPoly> = vec![LaurentPoly::one()];
        for k in 1..=pn {
            let c = self.coeffs[k].sub(&square_coeff(&p, k, 1));
            p.push(c.mul(&half));
        }
        for k in pn + 1..=self.degree() {
            if square_coeff(&p, k, k - pn) != self.coeffs[k] {
                return Err(AlgebraError::NoSquareRoot);
            }
        }
        Ok(EulerFactorDenom {
            var: self.var.clone(),
            coeffs: p,
            residue_degree: 1,
        })
    }

    pub fn with_residue_degree(mut self, f: u32) -> Self {
        self.residue_degree = f.max(1);
        self
    }
}

/// Σ_{lo ≤ j ≤ k−lo} p_j·p_{k−j}, using the symmetry j ↔ k − j.
fn square_coeff(p: &[LaurentPoly], k: usize, lo: usize) -> LaurentPoly {
    let mut twice = LaurentPoly::zero();
    let mut j = lo;
    while 2 * j < k {
        twice.add_mul_assign(&p[j], &p[k - j]);
        j += 1;
    }
    let mut out = twice.add(&twice);
    if k.is_multiple_of(2) && k / 2 >= lo {
        out.add_mul_assign(&p[k / 2], &p[k / 2]);
    }
    out
}

fn rational_half() -> LaurentPoly {
    super::laurent::rational(1, 2)
}

impl PartialEq for EulerFactorDenom {
    fn eq(&self, other: &Self) -> bool {
        self.var == other.var && self.coeffs == other.coeffs
    }
}

impl Eq for EulerFactorDenom {}

impl fmt::Display for EulerFactorDenom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let xk = match k {
                0 => String::new(),
                1 => self.var.to_string(),
                _ => format!("{}^{}", self.var, k),
            };
            let terms = c.signed_terms();
            let (neg, body) = if terms.len() == 1 {
                let (neg, b) = terms[0].clone();
                let body = if k == 0 {
                    b
                } else if b == "1" {
                    xk.clone()
                } else {
                    format!("{}*{}", b, xk)
                };
                (neg, body)
            } else {
                let all_neg = terms.iter().all(|(n, _)| *n);
                let inner = if all_neg {
                    c.neg().to_string()
                } else {
                    c.to_string()
                };
                (
                    all_neg,
                    if k == 0 {
                        inner
                    } else {
                        format!("({})*{}", inner, xk)
                    },
                )
            };
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            s.push_str(&body);
        }
        write!(f, "{}", s)
    }
}

/// The multiset {a·b : a ∈ A, b ∈ B}.
pub fn tensor_eigenvalues(a: &[LaurentPoly], b: &[LaurentPoly]) -> Vec<LaurentPoly> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| x.mul(y)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> Symbol {
        place_var()
    }

    #[test]
    fn trivial_eigenvalue() {
        let e = EulerFactorDenom::from_eigenvalues(&x(), &[LaurentPoly::one()], 1).unwrap();
        assert_eq!(e.to_string(), "1 - X");
        let e = EulerFactorDenom::from_eigenvalues(&x(), &[LaurentPoly::from_int(-1)], 1).unwrap();
        assert_eq!(e.to_string(), "1 + X");
    }

    #[test]
    fn conjugate_pair_at_degree_two() {
        let t = Symbol::eigen("t1");
        let eigs = [LaurentPoly::var(&t), LaurentPoly::var_pow(&t, -1)];
        let e = EulerFactorDenom::from_eigenvalues(&x(), &eigs, 2).unwrap();
        assert_eq!(e.to_string(), "1 - (t1^-1 + t1)*X^2 + X^4");
        assert_eq!(e.residue_degree(), 2);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(EulerFactorDenom::from_eigenvalues(&x(), &[LaurentPoly::one()], 0).is_err());
        assert!(EulerFactorDenom::from_eigenvalues(&x(), &[], 1).is_err());
        let y = Symbol::place("Y");
        let a = EulerFactorDenom::one(&x());
        let b = EulerFactorDenom::one(&y);
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn division_and_sqrt() {
        let t = Symbol::eigen("t1");
        let a = EulerFactorDenom::from_eigenvalues(&x(), &[LaurentPoly::var(&t)], 1).unwrap();
        let b = EulerFactorDenom::from_eigenvalues(&x(), &[LaurentPoly::from_int(3)], 1).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.div_exact(&b).unwrap(), a);
        assert_eq!(a.mul(&a).unwrap().sqrt().unwrap(), a);
        assert!(ab.sqrt().is_err());
        assert!(a.div_exact(&b).is_err());
    }

    #[test]
    fn empty_product_is_one() {
        let p = EulerFactorDenom::product(&x(), &[]).unwrap();
        assert_eq!(p.to_string(), "1");
    }
}
