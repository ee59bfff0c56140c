//! Period atoms, character expressions and exponent monomials.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Serialize, Serializer};

/// An embedding into C of one of the registered fields.
///
/// `sigma` selects the element of the fixed CM type of the base field that the
/// embedding lies over. `idx` is empty for the base field, `[i]` for a cyclic
/// extension, `[i, j]` for a compositum and `[i, partner]` for the fixed field
/// of ϑ^{n/2}c, where conjugation swaps the two entries.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Emb {
    pub field: String,
    pub sigma: u32,
    pub idx: Vec<u32>,
    pub conj: bool,
}

impl Emb {
    pub fn new(field: &str, sigma: u32, idx: Vec<u32>, conj: bool) -> Emb {
        Emb {
            field: field.to_string(),
            sigma,
            idx,
            conj,
        }
    }
}

impl fmt::Display for Emb {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(if self.conj { "ῑ" } else { "ι" })?;
        write!(f, "{}", self.sigma)?;
        match self.idx.len() {
            0 => Ok(()),
            1 => write!(f, "_{}", self.idx[0]),
            _ if self.field.ends_with('♭') => write!(f, "_{}|♭", self.idx[0]),
            _ => {
                let parts: Vec<String> = self.idx.iter().map(|i| i.to_string()).collect();
                write!(f, "_{{{}}}", parts.join(","))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CharOp {
    Plain,
    /// Composition with the norm from the named field down to the home field.
    Lift(String),
    /// Restriction to the named subfield.
    Restrict(String),
}

/// A Hecke character, possibly dualized (χ̌), Galois-translated, conjugated,
/// lifted along a norm or restricted to a subfield.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CharAtom {
    pub name: String,
    pub home: String,
    pub check: bool,
    pub theta: u32,
    pub conj: bool,
    pub op: CharOp,
}

impl CharAtom {
    pub fn new(name: &str, home: &str) -> CharAtom {
        CharAtom {
            name: name.to_string(),
            home: home.to_string(),
            check: false,
            theta: 0,
            conj: false,
            op: CharOp::Plain,
        }
    }

    pub fn checked(&self) -> CharAtom {
        CharAtom {
            check: !self.check,
            ..self.clone()
        }
    }

    pub fn translated(&self, k: u32, conj: bool) -> CharAtom {
        CharAtom {
            theta: self.theta + k,
            conj: self.conj ^ conj,
            ..self.clone()
        }
    }

    pub fn lifted(&self, to: &str) -> CharAtom {
        CharAtom {
            op: CharOp::Lift(to.to_string()),
            ..self.clone()
        }
    }

    pub fn restricted(&self, to: &str) -> CharAtom {
        CharAtom {
            op: CharOp::Restrict(to.to_string()),
            ..self.clone()
        }
    }

    pub fn plain(&self) -> CharAtom {
        CharAtom {
            op: CharOp::Plain,
            ..self.clone()
        }
    }

    /// The field on which this character lives.
    pub fn field(&self) -> &str {
        match &self.op {
            CharOp::Plain => &self.home,
            CharOp::Lift(f) | CharOp::Restrict(f) => f,
        }
    }
}

impl fmt::Display for CharAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut chars = self.name.chars();
        if let Some(c) = chars.next() {
            write!(f, "{}", c)?;
            if self.check {
                f.write_str("\u{30c}")?;
            }
            f.write_str(chars.as_str())?;
        }
        match (self.theta, self.conj) {
            (0, false) => {}
            (0, true) => f.write_str("^c")?,
            (1, c) => write!(f, "^{{ϑ{}}}", if c { " c" } else { "" })?,
            (k, c) => write!(f, "^{{ϑ^{}{}}}", k, if c { " c" } else { "" })?,
        }
        match &self.op {
            CharOp::Plain => Ok(()),
            CharOp::Lift(to) => write!(f, "∘N_{{{}/{}}}", to, self.home),
            CharOp::Restrict(to) => write!(f, "|_{{{}}}", to),
        }
    }
}

/// A finite product of character atoms with integer exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CharExpr(pub BTreeMap<CharAtom, i64>);

impl CharExpr {
    pub fn atom(a: CharAtom) -> CharExpr {
        let mut m = BTreeMap::new();
        m.insert(a, 1);
        CharExpr(m)
    }

    pub fn from_atoms(atoms: impl IntoIterator<Item = CharAtom>) -> CharExpr {
        let mut e = CharExpr::default();
        for a in atoms {
            *e.0.entry(a).or_insert(0) += 1;
        }
        e.0.retain(|_, v| *v != 0);
        e
    }

    pub fn checked(&self) -> CharExpr {
        CharExpr(self.0.iter().map(|(a, e)| (a.checked(), *e)).collect())
    }

    /// The sole atom when the expression is a single atom to the first power.
    pub fn single(&self) -> Option<&CharAtom> {
        match self.0.iter().next() {
            Some((a, 1)) if self.0.len() == 1 => Some(a),
            _ => None,
        }
    }
}

impl fmt::Display for CharExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (a, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("·")?;
            }
            write!(f, "{}", a)?;
            if *e != 1 {
                write!(f, "^({})", e)?;
            }
        }
        Ok(())
    }
}

/// The object whose L-function is evaluated.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LObject {
    Hecke { chi: CharExpr, field: String },
    /// Dedekind zeta of a totally real field of the given degree over Q.
    Zeta { field: String, deg: u32 },
    /// The quadratic character of a CM field over its maximal real subfield.
    QuadEps { field: String, deg: u32 },
    /// As^{(-1)^n} of a representation of rank n.
    Asai { rep: String },
    RankinSelberg { left: String, right: String, dual: bool },
}

impl fmt::Display for LObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LObject::Hecke { chi, .. } => write!(f, "{}", chi),
            LObject::Zeta { field, .. } => write!(f, "ζ_{{{}}}", field),
            LObject::QuadEps { field, .. } => write!(f, "ε_{{{}}}", field),
            LObject::Asai { rep } => write!(f, "As({})", rep),
            LObject::RankinSelberg { left, right, dual } => {
                write!(f, "{}×{}{}", left, right, if *dual { "^∨" } else { "" })
            }
        }
    }
}

/// A point of evaluation stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(pub i64);

impl HalfInt {
    pub fn int(k: i64) -> HalfInt {
        HalfInt(2 * k)
    }

    pub fn half_plus(m: i64) -> HalfInt {
        HalfInt(2 * m + 1)
    }

    pub fn as_int(self) -> Option<i64> {
        (self.0 % 2 == 0).then_some(self.0 / 2)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_int() {
            Some(k) => write!(f, "{}", k),
            None => write!(f, "{}/2", self.0),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PeriodAtom {
    TwoPiI,
    Cm { chi: CharExpr, emb: BTreeSet<Emb> },
    Whittaker(String),
    Gauss(String),
    ArchAsai(String),
    ArchRs { m: i64, left: String, right: String },
    LValue { point: HalfInt, obj: LObject },
}

impl PeriodAtom {
    pub fn cm(chi: CharExpr, emb: impl IntoIterator<Item = Emb>) -> PeriodAtom {
        PeriodAtom::Cm {
            chi,
            emb: emb.into_iter().collect(),
        }
    }

    pub fn lvalue(point: HalfInt, obj: LObject) -> PeriodAtom {
        PeriodAtom::LValue { point, obj }
    }

    pub fn is_cm(&self) -> bool {
        matches!(self, PeriodAtom::Cm { .. })
    }
}

impl fmt::Display for PeriodAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PeriodAtom::TwoPiI => f.write_str("(2πi)"),
            PeriodAtom::Cm { chi, emb } => {
                write!(f, "p({}, ", chi)?;
                if emb.len() == 1 {
                    write!(f, "{}", emb.iter().next().unwrap())?;
                } else {
                    let parts: Vec<String> = emb.iter().map(|e| e.to_string()).collect();
                    write!(f, "{{{}}}", parts.join(", "))?;
                }
                f.write_str(")")
            }
            PeriodAtom::Whittaker(r) => write!(f, "p({})", r),
            PeriodAtom::Gauss(c) => write!(f, "G({})", c),
            PeriodAtom::ArchAsai(k) => write!(f, "a({})", k),
            PeriodAtom::ArchRs { m, left, right } => write!(f, "p({}, {}, {})", m, left, right),
            PeriodAtom::LValue { point, obj } => match obj {
                LObject::Zeta { .. } => write!(f, "{}({})", obj, point),
                _ => write!(f, "L({}, {})", point, obj),
            },
        }
    }
}

/// A finitely supported map from atoms to nonzero integer exponents.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PeriodMonomial(BTreeMap<PeriodAtom, i64>);

impl PeriodMonomial {
    pub fn one() -> PeriodMonomial {
        PeriodMonomial::default()
    }

    pub fn atom(a: PeriodAtom) -> PeriodMonomial {
        PeriodMonomial::pow_atom(a, 1)
    }

    pub fn pow_atom(a: PeriodAtom, e: i64) -> PeriodMonomial {
        let mut m = PeriodMonomial::one();
        m.mul_atom(a, e);
        m
    }

    pub fn two_pi_i(e: i64) -> PeriodMonomial {
        PeriodMonomial::pow_atom(PeriodAtom::TwoPiI, e)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, a: &PeriodAtom) -> i64 {
        self.0.get(a).copied().unwrap_or(0)
    }

    pub fn two_pi_exponent(&self) -> i64 {
        self.exponent(&PeriodAtom::TwoPiI)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PeriodAtom, &i64)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul_atom(&mut self, a: PeriodAtom, e: i64) {
        if e == 0 {
            return;
        }
        match self.0.entry(a) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += e;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(e);
            }
        }
    }

    pub fn mul_assign_pow(&mut self, other: &PeriodMonomial, k: i64) {
        for (a, e) in &other.0 {
            self.mul_atom(a.clone(), e * k);
        }
    }

    pub fn mul(&self, other: &PeriodMonomial) -> PeriodMonomial {
        let mut out = self.clone();
        out.mul_assign_pow(other, 1);
        out
    }

    pub fn pow(&self, k: i64) -> PeriodMonomial {
        let mut out = PeriodMonomial::one();
        out.mul_assign_pow(self, k);
        out
    }

    pub fn div(&self, other: &PeriodMonomial) -> PeriodMonomial {
        let mut out = self.clone();
        out.mul_assign_pow(other, -1);
        out
    }

    /// The monomial with every TwoPiI factor removed.
    pub fn without_two_pi(&self) -> PeriodMonomial {
        let mut out = self.clone();
        out.0.remove(&PeriodAtom::TwoPiI);
        out
    }

    pub fn only_cm(&self) -> PeriodMonomial {
        PeriodMonomial(
            self.0
                .iter()
                .filter(|(a, _)| a.is_cm())
                .map(|(a, e)| (a.clone(), *e))
                .collect(),
        )
    }
}

impl FromIterator<(PeriodAtom, i64)> for PeriodMonomial {
    fn from_iter<T: IntoIterator<Item = (PeriodAtom, i64)>>(iter: T) -> Self {
        let mut m = PeriodMonomial::one();
        for (a, e) in iter {
            m.mul_atom(a, e);
        }
        m
    }
}

impl fmt::Display for PeriodMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (a, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" · ")?;
            }
            write!(f, "{}", a)?;
            if *e != 1 {
                write!(f, "^{}", e)?;
            }
        }
        Ok(())
    }
}

impl Serialize for PeriodMonomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The number field over which a relation holds, as a join of generators.
///
/// The empty join is Q.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldTag(BTreeSet<String>);

impl FieldTag {
    pub fn q() -> FieldTag {
        FieldTag::default()
    }

    pub fn of(labels: &[&str]) -> FieldTag {
        FieldTag(labels.iter().map(|s| s.to_string()).collect())
    }

    pub fn e_of(name: &str) -> FieldTag {
        FieldTag::of(&[&format!("E({})", name)])
    }

    pub fn join(&self, other: &FieldTag) -> FieldTag {
        FieldTag(self.0.union(&other.0).cloned().collect())
    }

    pub fn contains(&self, other: &FieldTag) -> bool {
        other.0.is_subset(&self.0)
    }

    pub fn labels(&self) -> impl Iterator<Item = &String> {
        self.0.iter()
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("Q");
        }
        let parts: Vec<&str> = self.0.iter().map(String::as_str).collect();
        f.write_str(&parts.join(""))
    }
}

impl Serialize for FieldTag {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}
