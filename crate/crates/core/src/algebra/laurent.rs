//! Sparse multivariate Laurent polynomials with cyclotomic coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed};

use super::cyclotomic::Cyclotomic;
use super::symbol::{Symbol, SymbolKind};
use super::AlgebraError;

/// A product of symbol powers, sorted by symbol, with no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(Vec<(Symbol, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(s: &Symbol, e: i32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(s.clone(), e)])
        }
    }

    pub fn from_pairs<I: IntoIterator<Item = (Symbol, i32)>>(pairs: I) -> Self {
        let mut map: BTreeMap<Symbol, i32> = BTreeMap::new();
        for (s, e) in pairs {
            *map.entry(s).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|(_, e)| *e != 0).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn factors(&self) -> &[(Symbol, i32)] {
        &self.0
    }

    pub fn exponent(&self, s: &Symbol) -> i32 {
        self.0.iter().find(|(t, _)| t == s).map_or(0, |(_, e)| *e)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    pub fn pow(&self, k: i32) -> Self {
        if k == 0 {
            return Monomial::one();
        }
        Monomial(self.0.iter().map(|(s, e)| (s.clone(), e * k)).collect())
    }

    fn has_roots(&self) -> bool {
        self.0.iter().any(|(s, _)| matches!(s.kind(), SymbolKind::Root { .. }))
    }

    /// Rewrites each root power u^e as t^q·u^r with e = q·l + r, 0 ≤ r < l.
    pub fn reduce_roots(&self) -> Self {
        let mut pairs = Vec::with_capacity(self.0.len());
        for (s, e) in &self.0 {
            match s.kind() {
                SymbolKind::Root { order, parent } => {
                    let l = *order as i32;
                    pairs.push((s.clone(), e.rem_euclid(l)));
                    pairs.push((parent.clone(), e.div_euclid(l)));
                }
                _ => pairs.push((s.clone(), *e)),
            }
        }
        Monomial::from_pairs(pairs)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(s, e)| {
                if *e == 1 {
                    s.to_string()
                } else {
                    format!("{}^{}", s, e)
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

#[derive(Clone, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Cyclotomic>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::constant(Cyclotomic::one())
    }

    pub fn constant(c: Cyclotomic) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn from_int(k: i64) -> Self {
        Self::constant(Cyclotomic::from_int(k))
    }

    pub fn term(m: Monomial, c: Cyclotomic) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn var(s: &Symbol) -> Self {
        Self::term(Monomial::var(s, 1), Cyclotomic::one())
    }

    pub fn var_pow(s: &Symbol, e: i32) -> Self {
        Self::term(Monomial::var(s, e), Cyclotomic::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Cyclotomic)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .next()
                .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }

    fn insert_add(terms: &mut BTreeMap<Monomial, Cyclotomic>, m: Monomial, c: Cyclotomic) {
        use std::collections::btree_map::Entry;
        match terms.entry(m) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            Self::insert_add(&mut terms, m.clone(), c.clone());
        }
        LaurentPoly { terms }
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), c.neg()))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        out.add_mul_assign(self, other);
        out
    }

    /// self += a·b, in place.
    pub fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                Self::insert_add(&mut self.terms, ma.mul(mb), ca.mul(cb));
            }
        }
    }

    pub fn scale(&self, c: &Cyclotomic) -> Self {
        let mut terms = BTreeMap::new();
        for (m, a) in &self.terms {
            Self::insert_add(&mut terms, m.clone(), a.mul(c));
        }
        LaurentPoly { terms }
    }

    /// The single (monomial, coefficient) pair of a unit, if the polynomial is one term.
    pub fn as_unit(&self) -> Option<(&Monomial, &Cyclotomic)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn is_unit(&self) -> bool {
        self.as_unit().is_some()
    }

    /// Integer power; negative powers are defined only for single-term units.
    pub fn pow(&self, k: i32) -> Result<Self, AlgebraError> {
        if k < 0 {
            let (m, c) = self.as_unit().ok_or(AlgebraError::NotInvertible)?;
            let c = c.pow(k as i64)?;
            return Ok(Self::term(m.pow(k), c));
        }
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        Ok(acc)
    }

    pub fn inv(&self) -> Result<Self, AlgebraError> {
        self.pow(-1)
    }

    /// Canonical form: zero terms pruned and root powers reduced modulo u^l = t.
    pub fn normalize(&self) -> Self {
        if !self.terms.keys().any(Monomial::has_roots) {
            return self.clone();
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            Self::insert_add(&mut terms, m.reduce_roots(), c.clone());
        }
        LaurentPoly { terms }
    }

    /// Substitutes each listed symbol by a polynomial; negative exponents need unit images.
    pub fn substitute(&self, map: &HashMap<Symbol, LaurentPoly>) -> Result<Self, AlgebraError> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut kept = Vec::new();
            let mut acc = Self::constant(c.clone());
            for (s, e) in m.factors() {
                match map.get(s) {
                    Some(img) => acc = acc.mul(&img.pow(*e)?),
                    None => kept.push((s.clone(), *e)),
                }
            }
            out = out.add(&acc.mul(&Self::term(Monomial::from_pairs(kept), Cyclotomic::one())));
        }
        Ok(out)
    }

    pub fn symbols(&self) -> Vec<Symbol> {
        let mut out: Vec<Symbol> = self
            .terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|(s, _)| s.clone()))
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

impl PartialEq for LaurentPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for LaurentPoly {}

fn is_negative_coeff(c: &Cyclotomic) -> Option<bool> {
    c.as_rational().map(|q| q.is_negative())
}

impl LaurentPoly {
    /// Renders the polynomial as a sum of signed terms; used by the Euler-factor printer.
    pub(crate) fn signed_terms(&self) -> Vec<(bool, String)> {
        let mut out = Vec::new();
        for (m, c) in &self.terms {
            let neg = is_negative_coeff(c).unwrap_or(false);
            let mag = if neg { c.neg() } else { c.clone() };
            let body = if m.is_one() {
                mag.to_string()
            } else if mag.is_one() {
                m.to_string()
            } else {
                format!("{}*{}", mag, m)
            };
            out.push((neg, body));
        }
        out
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.signed_terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut s = String::new();
        for (i, (neg, body)) in terms.iter().enumerate() {
            if i == 0 {
                if *neg {
                    s.push('-');
                }
            } else {
                s.push_str(if *neg { " - " } else { " + " });
            }
            s.push_str(body);
        }
        write!(f, "{}", s)
    }
}

impl From<i64> for LaurentPoly {
    fn from(k: i64) -> Self {
        Self::from_int(k)
    }
}

impl From<Cyclotomic> for LaurentPoly {
    fn from(c: Cyclotomic) -> Self {
        Self::constant(c)
    }
}

/// The rational number `p/q` as a constant polynomial.
pub fn rational(p: i64, q: i64) -> LaurentPoly {
    let r = BigRational::new(p.into(), q.into());
    if r.is_one() {
        LaurentPoly::one()
    } else {
        LaurentPoly::constant(Cyclotomic::from_rational(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_prunes_terms() {
        let t1 = LaurentPoly::var(&Symbol::eigen("t1"));
        let t2 = LaurentPoly::var(&Symbol::eigen("t2"));
        let p = t1.sub(&t1).add(&t2);
        assert_eq!(p, t2);
        assert_eq!(p.len(), 1);
        let z = LaurentPoly::zero().mul(&t1).add(&LaurentPoly::one());
        assert!(z.is_one());
    }

    #[test]
    fn roots_reduce_to_parent() {
        let t = Symbol::eigen("t1");
        let u = Symbol::root("u1_3", &t, 3);
        let p = LaurentPoly::var_pow(&u, 3).normalize();
        assert_eq!(p, LaurentPoly::var(&t));
        let q = LaurentPoly::var_pow(&u, -4).normalize();
        assert_eq!(q.to_string(), "t1^-2*u1_3^2");
    }

    #[test]
    fn unit_inverse() {
        let t = Symbol::eigen("t1");
        let p = LaurentPoly::var(&t).scale(&Cyclotomic::from_int(-2));
        let q = p.inv().unwrap();
        assert!(p.mul(&q).is_one());
        assert!(p.add(&LaurentPoly::one()).inv().is_err());
    }

    #[test]
    fn display_is_signed() {
        let t = Symbol::eigen("t1");
        let p = LaurentPoly::one().sub(&LaurentPoly::var(&t).scale(&Cyclotomic::from_int(2)));
        assert_eq!(p.to_string(), "1 - 2*t1");
    }
}
