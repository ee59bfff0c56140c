//! Asai factor of an automorphic induction from a cyclic CM extension L/F.
//!
//! Places of L over a fixed place v of F⁺ are modeled with the actions of a
//! generator ϑ of Gal(L/F) and of complex conjugation c; every factor on the
//! product side is read off from orbits of these actions.

use std::time::Instant;

use serde::Serialize;

use crate::algebra::{place_var, Cyclotomic, EulerFactorDenom, LaurentPoly, Symbol};

use super::{
    asai_local_factor_inert, asai_local_factor_split, rs_local_factor, GammaTwist, SatakeError,
    UnramifiedChar, VerificationReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CAction {
    /// v splits in F; c swaps w_i and w_i^c.
    SplitV,
    /// v inert in F and c fixes every w_i (forces t_i = 1).
    InertAllFixed,
    /// v inert in F and c(w_i) = w_{i+m/2}.
    InertHalfSwap,
}

impl CAction {
    pub fn label(self) -> &'static str {
        match self {
            CAction::SplitV => "SplitV",
            CAction::InertAllFixed => "InertAllFixed",
            CAction::InertHalfSwap => "InertHalfSwap",
        }
    }

    pub fn all() -> [CAction; 3] {
        [
            CAction::SplitV,
            CAction::InertAllFixed,
            CAction::InertHalfSwap,
        ]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct InducedDatum {
    n: u32,
    m: u32,
    l: u32,
    c_action: CAction,
}

impl InducedDatum {
    pub fn new(n: u32, m: u32, l: u32, c_action: CAction) -> Result<Self, SatakeError> {
        if n == 0 || m == 0 || l == 0 || m * l != n {
            return Err(SatakeError::InvalidDatum(format!(
                "m·l = {}·{} does not equal n = {}",
                m, l, n
            )));
        }
        match c_action {
            CAction::InertHalfSwap if !m.is_multiple_of(2) => {
                return Err(SatakeError::InvalidDatum(format!(
                    "InertHalfSwap needs m even, got m = {}",
                    m
                )))
            }
            CAction::InertAllFixed if l.is_multiple_of(2) => {
                return Err(SatakeError::InvalidDatum(format!(
                    "InertAllFixed needs l odd, got l = {}",
                    l
                )))
            }
            _ => {}
        }
        Ok(InducedDatum { n, m, l, c_action })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn c_action(&self) -> CAction {
        self.c_action
    }

    pub fn n_even(&self) -> bool {
        self.n.is_multiple_of(2)
    }

    pub fn label(&self) -> String {
        format!(
            "prop34 n={} m={} l={} {}",
            self.n,
            self.m,
            self.l,
            self.c_action.label()
        )
    }

    fn require_nondegenerate(&self) -> Result<(), SatakeError> {
        if self.n < 2 {
            return Err(SatakeError::InvalidDatum(
                "n = 1 is degenerate: [L:F] must be at least 2".into(),
            ));
        }
        Ok(())
    }

    /// Eigenvalue t_i of χ at w_i (0-based), with the case constraints imposed.
    fn t(&self, i: u32) -> LaurentPoly {
        self.free_or_imposed(i, |j| {
            LaurentPoly::var(&Symbol::eigen(&format!("t{}", j + 1)))
        })
    }

    /// The chosen l-th root of t_i.
    fn u(&self, i: u32) -> LaurentPoly {
        let l = self.l;
        self.free_or_imposed(i, |j| {
            let t = Symbol::eigen(&format!("t{}", j + 1));
            if l == 1 {
                LaurentPoly::var(&t)
            } else {
                LaurentPoly::var(&Symbol::root(&format!("u{}_{}", j + 1, l), &t, l))
            }
        })
    }

    fn free_or_imposed(&self, i: u32, free: impl Fn(u32) -> LaurentPoly) -> LaurentPoly {
        match self.c_action {
            CAction::SplitV => free(i),
            CAction::InertAllFixed => LaurentPoly::one(),
            CAction::InertHalfSwap => {
                let half = self.m / 2;
                if i < half {
                    free(i)
                } else {
                    free(i - half).inv().expect("unit")
                }
            }
        }
    }
}

/// Every admissible datum with 2 ≤ n ≤ max_n, ordered by (n, m, action).
pub fn admissible_cases(max_n: u32) -> Vec<InducedDatum> {
    let mut out = Vec::new();
    for n in 2..=max_n {
        for m in (1..=n).filter(|m| n % m == 0) {
            for a in CAction::all() {
                if let Ok(d) = InducedDatum::new(n, m, n / m, a) {
                    out.push(d);
                }
            }
        }
    }
    out
}

pub fn induced_eigenvalues(datum: &InducedDatum) -> Vec<LaurentPoly> {
    induced_eigenvalues_with_root(datum, 1)
}

/// {s·u_i·ζ^{g·a}}, ζ = e^{2πi/l}; g must be prime to l for ζ^g to be primitive.
pub fn induced_eigenvalues_with_root(datum: &InducedDatum, g: i64) -> Vec<LaurentPoly> {
    eigenvalue_list(datum, g, false)
}

fn eigenvalue_list(datum: &InducedDatum, g: i64, at_conjugate: bool) -> Vec<LaurentPoly> {
    let sign = Cyclotomic::from_int(if datum.n_even() { -1 } else { 1 });
    let mut out = Vec::with_capacity(datum.n as usize);
    for i in 0..datum.m {
        let u = if at_conjugate {
            datum.u(i).inv().expect("unit")
        } else {
            datum.u(i)
        };
        for a in 1..=datum.l as i64 {
            let c = sign.mul(&Cyclotomic::root_of_unity(datum.l, g * a));
            out.push(u.mul(&LaurentPoly::constant(c)));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Place {
    i: u32,
    /// Over w^c when v splits.
    conj: bool,
}

struct PlaceModel<'a> {
    d: &'a InducedDatum,
}

impl PlaceModel<'_> {
    fn places(&self) -> Vec<Place> {
        let mut out: Vec<Place> = (0..self.d.m).map(|i| Place { i, conj: false }).collect();
        if self.d.c_action == CAction::SplitV {
            out.extend((0..self.d.m).map(|i| Place { i, conj: true }));
        }
        out
    }

    fn theta(&self, p: Place, k: u32) -> Place {
        Place {
            i: (p.i + k) % self.d.m,
            conj: p.conj,
        }
    }

    fn c(&self, p: Place) -> Place {
        match self.d.c_action {
            CAction::SplitV => Place {
                i: p.i,
                conj: !p.conj,
            },
            CAction::InertAllFixed => p,
            CAction::InertHalfSwap => Place {
                i: (p.i + self.d.m / 2) % self.d.m,
                conj: false,
            },
        }
    }

    fn chi(&self, p: Place) -> LaurentPoly {
        let t = self.d.t(p.i);
        if p.conj {
            t.inv().expect("unit")
        } else {
            t
        }
    }

    /// Residue degree of an L-place over v.
    fn f(&self) -> i64 {
        match self.d.c_action {
            CAction::SplitV => self.d.l as i64,
            _ => 2 * self.d.l as i64,
        }
    }

    fn orbits(&self, act: impl Fn(Place) -> Place) -> Vec<Vec<Place>> {
        let mut seen = Vec::new();
        let mut out = Vec::new();
        for p in self.places() {
            if seen.contains(&p) {
                continue;
            }
            let mut orbit = vec![p];
            let mut q = act(p);
            while q != p {
                orbit.push(q);
                q = act(q);
            }
            seen.extend(orbit.iter().copied());
            out.push(orbit);
        }
        out
    }
}

fn linear(e: LaurentPoly, f: i64) -> Result<EulerFactorDenom, SatakeError> {
    Ok(EulerFactorDenom::from_eigenvalues(&place_var(), &[e], f)?)
}

/// The product side over v: ∏_k L(χ⊗χ^{ϑ^k,c}) · L(ε_{L/L⁺}) · (n even) L(χ|_{L♭}⊗ε_{L/L♭}).
pub fn prop34_rhs(datum: &InducedDatum) -> Result<EulerFactorDenom, SatakeError> {
    datum.require_nondegenerate()?;
    let pm = PlaceModel { d: datum };
    let f = pm.f();
    let mut out = EulerFactorDenom::one(&place_var());
    let k_max = if datum.n_even() {
        (datum.n - 2) / 2
    } else {
        (datum.n - 1) / 2
    };
    for k in 1..=k_max {
        for p in pm.places() {
            let e = pm.chi(p).mul(&pm.chi(pm.theta(pm.c(p), k)));
            out = out.mul(&linear(e, f)?)?;
        }
    }
    for orbit in pm.orbits(|p| pm.c(p)) {
        out = out.mul(&match orbit.len() {
            1 => linear(LaurentPoly::from_int(-1), f / 2)?,
            _ => linear(LaurentPoly::one(), f)?,
        })?;
    }
    if datum.n_even() {
        let sigma = |p: Place| pm.theta(pm.c(p), datum.n / 2);
        for orbit in pm.orbits(sigma) {
            out = out.mul(&match orbit.len() {
                1 => linear(pm.chi(orbit[0]).neg(), f / 2)?,
                _ => linear(pm.chi(orbit[0]).mul(&pm.chi(orbit[1])), f)?,
            })?;
        }
    }
    Ok(out)
}

/// The Asai side built from the Satake parameters of Π_χ; inert places go through
/// the square root P with P(0) = 1.
pub fn prop34_lhs(datum: &InducedDatum, g: i64) -> Result<EulerFactorDenom, SatakeError> {
    datum.require_nondegenerate()?;
    let eigs = induced_eigenvalues_with_root(datum, g);
    if datum.c_action == CAction::SplitV {
        return asai_local_factor_split(&eigs, &eigenvalue_list(datum, g, true));
    }
    let gamma = LaurentPoly::from_int(GammaTwist::for_rank(datum.n).sign());
    let lin: Vec<LaurentPoly> = eigs.iter().map(|a| a.mul(&gamma)).collect();
    let linear_part = EulerFactorDenom::from_eigenvalues(&place_var(), &lin, 1)?;
    let full = rs_local_factor(&eigs, &eigs, 1)?;
    let squares: Vec<LaurentPoly> = eigs.iter().map(|a| a.mul(a)).collect();
    let diag = EulerFactorDenom::from_eigenvalues(&place_var(), &squares, 1)?;
    let p = full.div_exact(&diag)?.sqrt()?;
    Ok(linear_part.mul(&p.inflate(2))?)
}

/// (1 + X^l)^m · (1 − X^{2l})^{(m²l − m)/2}, the InertAllFixed value for odd l.
pub fn all_fixed_closed_form(m: u32, l: u32) -> Result<EulerFactorDenom, SatakeError> {
    let x = place_var();
    let plus = EulerFactorDenom::from_eigenvalues(
        &x,
        &vec![LaurentPoly::from_int(-1); m as usize],
        l as i64,
    )?;
    let eigs = vec![LaurentPoly::one(); ((m * m * l - m) / 2) as usize];
    if eigs.is_empty() {
        return Ok(plus);
    }
    Ok(plus.mul(&EulerFactorDenom::from_eigenvalues(
        &x,
        &eigs,
        2 * l as i64,
    )?)?)
}

pub fn verify_prop34(datum: &InducedDatum) -> Result<VerificationReport, SatakeError> {
    let start = Instant::now();
    let lhs = prop34_lhs(datum, 1)?;
    let rhs = prop34_rhs(datum)?;
    let mut report = VerificationReport::compare(datum.label(), start, &lhs, &rhs);
    let lhs_n = lhs.normalize();
    let mut extra = lhs.degree() == (datum.n * datum.n) as usize;
    if datum.c_action != CAction::SplitV {
        let chars: Vec<UnramifiedChar> = induced_eigenvalues(datum)
            .into_iter()
            .map(|e| UnramifiedChar::new(e, true))
            .collect::<Result<_, _>>()?;
        let direct = asai_local_factor_inert(&[chars], GammaTwist::for_rank(datum.n))?;
        extra &= direct.normalize() == lhs_n;
    }
    if datum.l >= 3 {
        extra &= prop34_lhs(datum, datum.l as i64 - 1)?.normalize() == lhs_n;
    }
    if datum.c_action == CAction::InertAllFixed {
        extra &= all_fixed_closed_form(datum.m, datum.l)? == lhs_n;
    }
    report.equal &= extra;
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eigenvalue_examples() {
        let d = InducedDatum::new(1, 1, 1, CAction::InertAllFixed).unwrap();
        assert_eq!(induced_eigenvalues(&d), vec![LaurentPoly::one()]);
        let d = InducedDatum::new(3, 3, 1, CAction::SplitV).unwrap();
        let got: Vec<String> = induced_eigenvalues(&d)
            .iter()
            .map(|e| e.to_string())
            .collect();
        assert_eq!(got, vec!["t1", "t2", "t3"]);
        let d = InducedDatum::new(2, 1, 2, CAction::SplitV).unwrap();
        let got: Vec<String> = induced_eigenvalues(&d)
            .iter()
            .map(|e| e.to_string())
            .collect();
        assert_eq!(got, vec!["u1_2", "-u1_2"]);
    }

    #[test]
    fn rejects_bad_data() {
        assert!(InducedDatum::new(4, 3, 1, CAction::SplitV).is_err());
        assert!(InducedDatum::new(3, 3, 1, CAction::InertHalfSwap).is_err());
        assert!(InducedDatum::new(4, 2, 2, CAction::InertAllFixed).is_err());
        let d = InducedDatum::new(1, 1, 1, CAction::SplitV).unwrap();
        assert!(prop34_rhs(&d).is_err());
    }

    #[test]
    fn closed_form_n3() {
        let d = InducedDatum::new(3, 3, 1, CAction::InertAllFixed).unwrap();
        let want = all_fixed_closed_form(3, 1).unwrap();
        assert_eq!(prop34_rhs(&d).unwrap().normalize(), want);
        assert!(verify_prop34(&d).unwrap().equal);
    }

    #[test]
    fn split_n2() {
        let d = InducedDatum::new(2, 2, 1, CAction::SplitV).unwrap();
        let t1 = LaurentPoly::var(&Symbol::eigen("t1"));
        let t2 = LaurentPoly::var(&Symbol::eigen("t2"));
        let ts = [t1.clone(), t2.clone()];
        let inv: Vec<LaurentPoly> = ts.iter().map(|t| t.inv().unwrap()).collect();
        let want = rs_local_factor(&ts, &inv, 1).unwrap();
        assert_eq!(prop34_rhs(&d).unwrap().normalize(), want.normalize());
    }

    #[test]
    fn worked_examples_hold() {
        for (n, m, l, a) in [
            (4, 2, 2, CAction::SplitV),
            (4, 2, 2, CAction::InertHalfSwap),
            (3, 1, 3, CAction::SplitV),
            (6, 2, 3, CAction::InertHalfSwap),
        ] {
            let d = InducedDatum::new(n, m, l, a).unwrap();
            let r = verify_prop34(&d).unwrap();
            assert!(r.equal, "{}: {} vs {}", r.case, r.lhs, r.rhs);
        }
    }
}
