//! Elements of Q(ζ_m) stored as residues modulo the m-th cyclotomic polynomial.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;
use parking_lot::RwLock;

use super::AlgebraError;

static CYCLOTOMIC_POLYS: Lazy<RwLock<HashMap<u32, Arc<Vec<i64>>>>> =
    Lazy::new(|| RwLock::new(HashMap::new()));

/// Euler's totient.
pub fn totient(m: u32) -> u32 {
    let mut n = m;
    let mut out = m;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

/// Integer coefficients of Φ_m, lowest degree first.
pub fn cyclotomic_poly(m: u32) -> Arc<Vec<i64>> {
    assert!(m >= 1, "cyclotomic order must be positive");
    if let Some(p) = CYCLOTOMIC_POLYS.read().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Φ_d for every proper divisor d
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let den = cyclotomic_poly(d);
            num = div_monic_int(&num, &den);
        }
    }
    let out = Arc::new(num);
    CYCLOTOMIC_POLYS.write().insert(m, out.clone());
    out
}

fn div_monic_int(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut q = vec![0i64; qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn];
        q[k] = c;
        for (j, &b) in den.iter().enumerate() {
            rem[k + j] -= c * b;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    q
}

/// An element of Q(ζ_m).
#[derive(Clone, Debug)]
pub struct Cyclotomic {
    order: u32,
    repr: Repr,
}

/// Rational integers that fit a machine word stay unboxed; `Small` only occurs at order 1.
#[derive(Clone, Debug)]
enum Repr {
    Small(i64),
    Big(Vec<BigRational>),
}

fn big(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        if order == 1 {
            return Self::from_int(0);
        }
        let n = totient(order) as usize;
        Cyclotomic {
            order,
            repr: Repr::Big(vec![BigRational::zero(); n]),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_rational(q: BigRational) -> Self {
        if q.is_integer() {
            if let Some(k) = q.numer().to_i64() {
                return Self::from_int(k);
            }
        }
        Cyclotomic {
            order: 1,
            repr: Repr::Big(vec![q]),
        }
    }

    pub fn from_int(k: i64) -> Self {
        Cyclotomic {
            order: 1,
            repr: Repr::Small(k),
        }
    }

    /// ζ_m^k where ζ_m = exp(2πi/m).
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        let e = k.rem_euclid(order as i64) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Self::reduce(order, poly)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients in the power basis 1, ζ, …, ζ^{φ(m)−1}.
    pub fn coeffs(&self) -> Vec<BigRational> {
        match &self.repr {
            Repr::Small(k) => vec![big(*k)],
            Repr::Big(c) => c.clone(),
        }
    }

    fn big_coeffs(&self) -> std::borrow::Cow<'_, [BigRational]> {
        match &self.repr {
            Repr::Small(k) => std::borrow::Cow::Owned(vec![big(*k)]),
            Repr::Big(c) => std::borrow::Cow::Borrowed(c),
        }
    }

    fn from_big(order: u32, coeffs: Vec<BigRational>) -> Self {
        if order == 1 {
            return Self::from_rational(
                coeffs.into_iter().next().unwrap_or_else(BigRational::zero),
            );
        }
        Cyclotomic {
            order,
            repr: Repr::Big(coeffs),
        }
    }

    fn reduce(order: u32, mut poly: Vec<BigRational>) -> Self {
        let phi = cyclotomic_poly(order);
        let deg = phi.len() - 1;
        while poly.len() > deg {
            let top = poly.pop().unwrap();
            if top.is_zero() {
                continue;
            }
            let shift = poly.len() - deg;
            for (j, &c) in phi.iter().take(deg).enumerate() {
                if c != 0 {
                    poly[shift + j] -= &top * big(c);
                }
            }
        }
        poly.resize(deg, BigRational::zero());
        Self::from_big(order, poly)
    }

    /// Re-express in Q(ζ_target); `target` must be a multiple of the current order.
    pub fn lift(&self, target: u32) -> Self {
        if target == self.order {
            return self.clone();
        }
        assert!(
            target.is_multiple_of(self.order),
            "cannot lift order {} to {}",
            self.order,
            target
        );
        let step = (target / self.order) as usize;
        let coeffs = self.big_coeffs();
        let mut poly = vec![BigRational::zero(); (coeffs.len().max(1) - 1) * step + 1];
        for (i, c) in coeffs.iter().enumerate() {
            poly[i * step] = c.clone();
        }
        Self::reduce(target, poly)
    }

    fn common(&self, other: &Self) -> (Self, Self) {
        if self.order == other.order {
            return (self.clone(), other.clone());
        }
        let m = self.order.lcm(&other.order);
        (self.lift(m), other.lift(m))
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Small(k) => *k == 0,
            Repr::Big(c) => c.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Small(k) => *k == 1,
            Repr::Big(_) => self.as_rational().is_some_and(|q| q.is_one()),
        }
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        match &self.repr {
            Repr::Small(k) => Some(big(*k)),
            Repr::Big(c) if c.iter().skip(1).all(Zero::is_zero) => {
                Some(c.first().cloned().unwrap_or_else(BigRational::zero))
            }
            Repr::Big(_) => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.repr, &other.repr) {
            if let Some(s) = a.checked_add(*b) {
                return Self::from_int(s);
            }
        }
        if self.order != other.order {
            let (a, b) = self.common(other);
            return a.add(&b);
        }
        let coeffs = self
            .big_coeffs()
            .iter()
            .zip(other.big_coeffs().iter())
            .map(|(a, b)| a + b)
            .collect();
        Self::from_big(self.order, coeffs)
    }

    pub fn neg(&self) -> Self {
        if let Repr::Small(k) = self.repr {
            if let Some(n) = k.checked_neg() {
                return Self::from_int(n);
            }
        }
        Self::from_big(self.order, self.big_coeffs().iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.repr, &other.repr) {
            if let Some(p) = a.checked_mul(*b) {
                return Self::from_int(p);
            }
        }
        if let (Some(q), true) = (self.as_rational(), other.order != 1) {
            return other.scale(&q);
        }
        if let (Some(q), true) = (other.as_rational(), self.order != 1) {
            return self.scale(&q);
        }
        if self.order != other.order {
            let (a, b) = self.common(other);
            return a.mul(&b);
        }
        let (ac, bc) = (self.big_coeffs(), other.big_coeffs());
        if self.order == 1 {
            return Self::from_rational(&ac[0] * &bc[0]);
        }
        let n = ac.len();
        let mut poly = vec![BigRational::zero(); 2 * n - 1];
        for (i, a) in ac.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in bc.iter().enumerate() {
                if !b.is_zero() {
                    poly[i + j] += a * b;
                }
            }
        }
        Self::reduce(self.order, poly)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self::from_big(
            self.order,
            self.big_coeffs().iter().map(|c| c * q).collect(),
        )
    }

    /// Multiplicative inverse via the extended Euclidean algorithm over Q[x].
    pub fn inv(&self) -> Result<Self, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::NotInvertible);
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(q.recip()).lift(self.order));
        }
        let phi: Vec<BigRational> = cyclotomic_poly(self.order)
            .iter()
            .map(|&c| big(c))
            .collect();
        let (g, s) = qpoly::ext_gcd(&self.big_coeffs(), &phi);
        // g is a nonzero constant since Φ_m is irreducible
        let g0 = g[0].clone();
        let s: Vec<BigRational> = s.iter().map(|c| c / &g0).collect();
        Ok(Self::reduce(self.order, s))
    }

    pub fn pow(&self, e: i64) -> Result<Self, AlgebraError> {
        let mut base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one().lift(self.order);
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        Ok(acc)
    }
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.repr, &other.repr) {
            return a == b;
        }
        if self.order == other.order {
            return self.big_coeffs() == other.big_coeffs();
        }
        let (a, b) = self.common(other);
        a.big_coeffs() == b.big_coeffs()
    }
}

impl Eq for Cyclotomic {}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Repr::Small(k) = self.repr {
            return write!(f, "{}", k);
        }
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", fmt_rational(&q));
        }
        let mut parts = Vec::new();
        for (i, c) in self.big_coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let z = match i {
                0 => String::new(),
                1 => format!("z{}", self.order),
                _ => format!("z{}^{}", self.order, i),
            };
            let mag = fmt_rational(&c.abs());
            let body = if i == 0 {
                mag
            } else if c.abs().is_one() {
                z
            } else {
                format!("{}*{}", mag, z)
            };
            if parts.is_empty() {
                parts.push(if c.is_negative() {
                    format!("-{}", body)
                } else {
                    body
                });
            } else {
                parts.push(format!(
                    "{} {}",
                    if c.is_negative() { "-" } else { "+" },
                    body
                ));
            }
        }
        write!(f, "({})", parts.join(" "))
    }
}

mod qpoly {
    use num_rational::BigRational;
    use num_traits::Zero;

    fn trim(p: &mut Vec<BigRational>) {
        while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
            p.pop();
        }
        if p.is_empty() {
            p.push(BigRational::zero());
        }
    }

    fn is_zero(p: &[BigRational]) -> bool {
        p.iter().all(Zero::is_zero)
    }

    fn divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut r = a.to_vec();
        trim(&mut r);
        let mut b = b.to_vec();
        trim(&mut b);
        let db = b.len() - 1;
        if r.len() - 1 < db || is_zero(&r) {
            return (vec![BigRational::zero()], r);
        }
        let lead = b[db].clone();
        let mut q = vec![BigRational::zero(); r.len() - db];
        while r.len() > db && !is_zero(&r) {
            let k = r.len() - 1 - db;
            let c = &r[r.len() - 1] / &lead;
            for (j, bj) in b.iter().enumerate() {
                r[k + j] -= &c * bj;
            }
            q[k] = c;
            r.pop();
            trim(&mut r);
            if r.len() - 1 < db {
                break;
            }
        }
        (q, r)
    }

    fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(&mut out);
        out
    }

    fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        let n = a.len().max(b.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, x) in a.iter().enumerate() {
            out[i] += x;
        }
        for (i, y) in b.iter().enumerate() {
            out[i] -= y;
        }
        trim(&mut out);
        out
    }

    /// Returns (g, s) with s·a ≡ g mod b.
    pub fn ext_gcd(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
        let mut r0 = a.to_vec();
        trim(&mut r0);
        let mut r1 = b.to_vec();
        trim(&mut r1);
        let mut s0 = vec![BigRational::from_integer(1.into())];
        let mut s1 = vec![BigRational::zero()];
        while !is_zero(&r1) {
            let (q, r) = divrem(&r0, &r1);
            let s2 = sub(&s0, &mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        (r0, s0)
    }
}
