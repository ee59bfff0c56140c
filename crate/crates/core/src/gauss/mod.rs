//! Dirichlet characters, Gauss sums and L-series at high precision, with the
//! quadratic Gauss sum and class number formula checks for imaginary
//! quadratic fields.

mod character;

use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;
use parking_lot::Mutex;
use serde::Serialize;

pub use character::{
    characters, fundamental_discriminants, is_fundamental, kronecker, primitive_characters,
    DirichletChar,
};

/// Working precision in bits, a little over 55 significant digits.
pub const PREC: usize = 192;
const RM: RoundingMode = RoundingMode::ToEven;
/// Per-operation relative error charged to each rounded result.
const ULP: f64 = 1.0e-54;
/// Euler-Maclaurin order used for L-series tails.
const EM_ORDER: usize = 12;
pub const MIN_TOL: f64 = 1.0e-40;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GaussError {
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("{0} is not a negative fundamental discriminant")]
    NotFundamental(i64),
    #[error("L-series of a principal character diverges at s = 1")]
    Divergent,
    #[error("characters do not multiply: {0}")]
    NotMultiplicative(String),
}

/// A complex number with an accumulated error bound.
#[derive(Debug)]
pub struct ComplexApprox {
    pub real: BigFloat,
    pub imag: BigFloat,
    pub error_bound: f64,
}

impl Clone for ComplexApprox {
    fn clone(&self) -> Self {
        ComplexApprox {
            real: self.real.clone(),
            imag: self.imag.clone(),
            error_bound: self.error_bound,
        }
    }
}

fn to_f64(x: &BigFloat) -> f64 {
    x.to_string().parse::<f64>().unwrap_or(f64::NAN)
}

fn int(k: i64) -> BigFloat {
    BigFloat::from_i64(k, PREC)
}

fn consts() -> Consts {
    Consts::new().expect("constant cache")
}

/// `digits` significant decimal digits of `x`.
pub fn decimal(x: &BigFloat, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut cc = consts();
    let bits = (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 4;
    let mut y = x.clone();
    let _ = y.set_precision(bits, RM);
    y.format(Radix::Dec, RM, &mut cc).unwrap_or_else(|_| x.to_string())
}

impl ComplexApprox {
    pub fn new(real: BigFloat, imag: BigFloat, error_bound: f64) -> Self {
        ComplexApprox {
            real,
            imag,
            error_bound,
        }
    }

    pub fn from_f64(re: f64, im: f64) -> Self {
        ComplexApprox::new(BigFloat::from_f64(re, PREC), BigFloat::from_f64(im, PREC), 0.0)
    }

    pub fn re(&self) -> f64 {
        to_f64(&self.real)
    }

    pub fn im(&self) -> f64 {
        to_f64(&self.imag)
    }

    pub fn conj(&self) -> Self {
        ComplexApprox::new(self.real.clone(), self.imag.neg(), self.error_bound)
    }

    pub fn add(&self, o: &Self) -> Self {
        ComplexApprox::new(
            self.real.add(&o.real, PREC, RM),
            self.imag.add(&o.imag, PREC, RM),
            self.error_bound + o.error_bound + ULP * (self.abs() + o.abs()),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        ComplexApprox::new(self.real.neg(), self.imag.neg(), self.error_bound)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let (a, b, c, d) = (&self.real, &self.imag, &o.real, &o.imag);
        let re = a.mul(c, PREC, RM).sub(&b.mul(d, PREC, RM), PREC, RM);
        let im = a.mul(d, PREC, RM).add(&b.mul(c, PREC, RM), PREC, RM);
        let (x, y) = (self.abs(), o.abs());
        ComplexApprox::new(
            re,
            im,
            x * o.error_bound + y * self.error_bound + self.error_bound * o.error_bound + 4.0 * ULP * x * y,
        )
    }

    pub fn scale(&self, r: &BigFloat) -> Self {
        let k = to_f64(r).abs();
        ComplexApprox::new(
            self.real.mul(r, PREC, RM),
            self.imag.mul(r, PREC, RM),
            k * self.error_bound + 2.0 * ULP * k * self.abs(),
        )
    }

    /// Modulus as a double; only used for error bookkeeping and reports.
    pub fn abs(&self) -> f64 {
        self.re().hypot(self.im())
    }

    pub fn norm_sqr(&self) -> BigFloat {
        self.real
            .mul(&self.real, PREC, RM)
            .add(&self.imag.mul(&self.imag, PREC, RM), PREC, RM)
    }

    /// |self − other| computed at full precision, then rounded to a double.
    pub fn dist(&self, o: &Self) -> f64 {
        let d = self.sub(o);
        let n = d.norm_sqr().sqrt(PREC, RM);
        to_f64(&n)
    }

    pub fn to_decimal(&self, digits: usize) -> String {
        let (sign, im) = if self.imag.is_negative() {
            ("-", self.imag.neg())
        } else {
            ("+", self.imag.clone())
        };
        format!("{} {} {} i", decimal(&self.real, digits), sign, decimal(&im, digits))
    }
}

static ROOTS: Lazy<Mutex<HashMap<u32, Arc<Vec<ComplexApprox>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// The `order`-th roots of unity e^{2πik/order}, k = 0..order.
pub fn roots_of_unity(order: u32) -> Arc<Vec<ComplexApprox>> {
    if let Some(r) = ROOTS.lock().get(&order) {
        return r.clone();
    }
    let mut cc = consts();
    let two_pi = cc.pi(PREC, RM).mul(&int(2), PREC, RM);
    let n = order.max(1);
    let table: Vec<ComplexApprox> = (0..n)
        .map(|k| {
            let t = two_pi.mul(&int(k as i64), PREC, RM).div(&int(n as i64), PREC, RM);
            ComplexApprox::new(t.cos(PREC, RM, &mut cc), t.sin(PREC, RM, &mut cc), 8.0 * ULP)
        })
        .collect();
    let table = Arc::new(table);
    ROOTS.lock().insert(order, table.clone());
    table
}

fn char_value(chi: &DirichletChar, a: u32) -> Option<ComplexApprox> {
    chi.exponent(a).map(|k| roots_of_unity(chi.order())[k as usize].clone())
}

/// Σ_{a mod N} χ(a) e^{2πia/N}.
pub fn gauss_sum(chi: &DirichletChar) -> ComplexApprox {
    let n = chi.modulus();
    let zeta = roots_of_unity(n);
    let mut acc = ComplexApprox::new(int(0), int(0), 0.0);
    for a in 0..n {
        if let Some(v) = char_value(chi, a) {
            acc = acc.add(&v.mul(&zeta[a as usize]));
        }
    }
    acc
}

fn bernoulli(count: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for m in 1..=count {
        let mut s = BigRational::zero();
        let mut binom = BigInt::one();
        for (k, bk) in b.iter().enumerate() {
            s += BigRational::from_integer(binom.clone()) * bk;
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        b.push(-s / BigRational::from_integer(BigInt::from(m + 1)));
    }
    b
}

fn rational(q: &BigRational, cc: &mut Consts) -> BigFloat {
    let n = BigFloat::parse(&q.numer().to_string(), Radix::Dec, PREC, RM, cc);
    let d = BigFloat::parse(&q.denom().to_string(), Radix::Dec, PREC, RM, cc);
    n.div(&d, PREC, RM)
}

/// c_j = B_{2j}/(2j)! for j = 1..=EM_ORDER.
fn em_coefficients() -> &'static [BigRational] {
    static C: Lazy<Vec<BigRational>> = Lazy::new(|| {
        let b = bernoulli(2 * EM_ORDER);
        let mut fact = BigInt::one();
        let mut out = Vec::new();
        for m in 1..=2 * EM_ORDER {
            fact *= BigInt::from(m);
            if m % 2 == 0 {
                out.push(&b[m] / BigRational::from_integer(fact.clone()));
            }
        }
        out
    });
    &C
}

/// (s)_r = s(s+1)…(s+r−1) as a double.
fn rising(s: f64, r: usize) -> f64 {
    (0..r).map(|i| s + i as f64).product()
}

/// Rigorous bound on the Euler-Maclaurin remainder for K blocks.
fn tail_remainder(n: u32, units: usize, s: f64, k: u64) -> f64 {
    let p = EM_ORDER;
    let c = em_coefficients()[p - 1].abs();
    let c = c.numer().to_string().parse::<f64>().unwrap_or(f64::INFINITY)
        / c.denom().to_string().parse::<f64>().unwrap_or(1.0);
    let x = (k * n as u64 + 1) as f64;
    let n = n as f64;
    let log = c.ln()
        + (units as f64).ln()
        + rising(s, 2 * p - 1).ln()
        + (2 * p - 1) as f64 * n.ln()
        + (1.0 - s - 2.0 * p as f64) * x.ln();
    log.exp()
}

fn pow_neg(x: &BigFloat, s: &BigFloat, cc: &mut Consts) -> BigFloat {
    x.ln(PREC, RM, cc).mul(s, PREC, RM).neg().exp(PREC, RM, cc)
}

/// L(s, χ) for real s ≥ 1, to within `tol`.
///
/// The series is summed over K complete blocks of length N; the remaining
/// tail of each residue class is evaluated by Euler-Maclaurin summation and
/// its remainder bounded explicitly.
pub fn dirichlet_l(chi: &DirichletChar, s: f64, tol: f64) -> Result<ComplexApprox, GaussError> {
    if !s.is_finite() || s < 1.0 {
        return Err(GaussError::InvalidParam(format!("s = {} must be real and at least 1", s)));
    }
    if !tol.is_finite() || tol < MIN_TOL {
        return Err(GaussError::InvalidParam(format!(
            "tolerance {} must be at least {:e}",
            tol, MIN_TOL
        )));
    }
    let principal = chi.is_principal();
    if principal && s == 1.0 {
        return Err(GaussError::Divergent);
    }
    let n = chi.modulus();
    let units: Vec<u32> = (1..=n).filter(|a| a.gcd(&n) == 1).collect();
    let mut k: u64 = 2;
    while tail_remainder(n, units.len(), s, k) > tol / 4.0 {
        k *= 2;
        if k > 1 << 24 {
            return Err(GaussError::InvalidParam(format!("tolerance {} out of reach", tol)));
        }
    }
    let remainder = tail_remainder(n, units.len(), s, k);
    let mut cc = consts();
    let sb = BigFloat::from_f64(s, PREC);
    let nb = int(n as i64);
    let coeffs: Vec<BigFloat> = em_coefficients().iter().map(|c| rational(c, &mut cc)).collect();
    let mut acc = ComplexApprox::new(int(0), int(0), 0.0);
    let mut ops = 0usize;
    let mut mag = 0.0f64;
    for &a in &units {
        let mut w = int(0);
        for j in 0..k {
            let x = int((j * n as u64 + a as u64) as i64);
            w = w.add(&pow_neg(&x, &sb, &mut cc), PREC, RM);
            ops += 3;
        }
        let x = int((k * n as u64 + a as u64) as i64);
        let lx = x.ln(PREC, RM, &mut cc);
        let head = pow_neg(&x, &sb, &mut cc);
        let integral = if s == 1.0 {
            lx.div(&nb, PREC, RM).neg()
        } else {
            let t = lx.mul(&BigFloat::from_f64(1.0 - s, PREC), PREC, RM).exp(PREC, RM, &mut cc);
            t.div(&nb.mul(&BigFloat::from_f64(s - 1.0, PREC), PREC, RM), PREC, RM)
        };
        w = w.add(&integral, PREC, RM).add(&head.div(&int(2), PREC, RM), PREC, RM);
        let xinv = x.reciprocal(PREC, RM);
        // term_j = c_j (s)_{2j−1} N^{2j−1} x^{−s−2j+1}
        let mut t = head.mul(&sb, PREC, RM).mul(&nb, PREC, RM).mul(&xinv, PREC, RM);
        for (j, c) in coeffs.iter().enumerate() {
            if j > 0 {
                let r = 2 * j as i64;
                let f = sb
                    .add(&int(r - 1), PREC, RM)
                    .mul(&sb.add(&int(r), PREC, RM), PREC, RM);
                t = t.mul(&f, PREC, RM).mul(&nb, PREC, RM).mul(&nb, PREC, RM);
                t = t.mul(&xinv, PREC, RM).mul(&xinv, PREC, RM);
            }
            w = w.add(&c.mul(&t, PREC, RM), PREC, RM);
            ops += 8;
        }
        mag = mag.max(to_f64(&w).abs()).max(to_f64(&lx).abs() + 1.0);
        let v = char_value(chi, a % n).expect("unit");
        acc = acc.add(&v.scale(&w));
    }
    acc.error_bound += remainder + ULP * ops as f64 * mag.max(1.0) * units.len() as f64;
    Ok(acc)
}

/// Shared report shape for numeric checks.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NumericReport {
    pub case: String,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
    pub tol: f64,
    pub error_bound: f64,
    pub equal: bool,
    pub detail: String,
    pub elapsed_ms: f64,
}

impl NumericReport {
    fn new(case: String, start: Instant, lhs: f64, rhs: f64, abs_err: f64, tol: f64, error_bound: f64, detail: String) -> Self {
        NumericReport {
            case,
            lhs,
            rhs,
            abs_err,
            tol,
            error_bound,
            equal: abs_err <= tol,
            detail,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        }
    }
}

pub const GAUSS_TOL: f64 = 1e-9;
pub const CLASS_NUMBER_TOL: f64 = 1e-6;

fn check_discriminant(d: i64) -> Result<(), GaussError> {
    if d >= 0 || !is_fundamental(d) {
        return Err(GaussError::NotFundamental(d));
    }
    Ok(())
}

/// Checks G(χ_D) = i√|D|, i.e. G/(i√|D|) = 1. The reported error is |G − i√|D||,
/// which dominates |G/(i√|D|) − 1|.
pub fn verify_quadratic_gauss(d: i64) -> Result<NumericReport, GaussError> {
    check_discriminant(d)?;
    let start = Instant::now();
    let chi = kronecker(d)?;
    let g = gauss_sum(&chi);
    let root = int(d.abs()).sqrt(PREC, RM);
    let want = ComplexApprox::new(int(0), root.clone(), ULP);
    let err = g.dist(&want);
    Ok(NumericReport::new(
        format!("quadratic D={}", d),
        start,
        g.im(),
        to_f64(&root),
        err,
        GAUSS_TOL,
        g.error_bound,
        format!("G = {}", g.to_decimal(30)),
    ))
}

/// Checks L(1, χ_D) = 2πh/(w√|D|).
pub fn class_number_check(d: i64, h: u64, w: u64) -> Result<NumericReport, GaussError> {
    check_discriminant(d)?;
    if h == 0 || w == 0 {
        return Err(GaussError::InvalidParam("h and w must be positive".into()));
    }
    let start = Instant::now();
    let chi = kronecker(d)?;
    let l = dirichlet_l(&chi, 1.0, 1e-20)?;
    let mut cc = consts();
    let formula = cc
        .pi(PREC, RM)
        .mul(&int(2 * h as i64), PREC, RM)
        .div(&int(w as i64).mul(&int(d.abs()).sqrt(PREC, RM), PREC, RM), PREC, RM);
    let want = ComplexApprox::new(formula.clone(), int(0), ULP);
    let err = l.dist(&want);
    Ok(NumericReport::new(
        format!("classnumber D={} h={} w={}", d, h, w),
        start,
        l.re(),
        to_f64(&formula),
        err,
        CLASS_NUMBER_TOL,
        l.error_bound,
        format!("L(1) = {}", l.to_decimal(30)),
    ))
}

/// Checks |G(χ)|² = N.
pub fn gauss_norm_check(chi: &DirichletChar) -> NumericReport {
    let start = Instant::now();
    let g = gauss_sum(chi);
    let n2 = g.norm_sqr();
    let n = chi.modulus() as f64;
    let err = to_f64(&n2.sub(&int(chi.modulus() as i64), PREC, RM)).abs();
    NumericReport::new(
        format!("norm {}", chi.label()),
        start,
        to_f64(&n2),
        n,
        err,
        GAUSS_TOL,
        2.0 * g.abs() * g.error_bound + g.error_bound * g.error_bound,
        format!("G = {}", g.to_decimal(30)),
    )
}

/// Checks G(χ̄) = χ(−1)·conj(G(χ)).
pub fn gauss_conjugate_check(chi: &DirichletChar) -> NumericReport {
    let start = Instant::now();
    let g = gauss_sum(chi);
    let gb = gauss_sum(&chi.conj());
    let sign = chi.parity();
    let rhs = if sign < 0 { g.conj().neg() } else { g.conj() };
    let err = gb.dist(&rhs);
    NumericReport::new(
        format!("conjugate {}", chi.label()),
        start,
        gb.re(),
        rhs.re(),
        err,
        GAUSS_TOL,
        gb.error_bound + g.error_bound,
        format!("G(χ̄) = {}", gb.to_decimal(30)),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_numbers() {
        let b = bernoulli(12);
        let r = |n, d| BigRational::new(BigInt::from(n), BigInt::from(d));
        assert_eq!(b[1], r(-1, 2));
        assert_eq!(b[2], r(1, 6));
        assert_eq!(b[3], r(0, 1));
        assert_eq!(b[12], r(-691, 2730));
    }

    #[test]
    fn roots_are_on_the_circle() {
        for z in roots_of_unity(7).iter() {
            assert!((to_f64(&z.norm_sqr()) - 1.0).abs() < 1e-30);
        }
    }
}
