//! Highest weights, infinity-types, critical sets and the piano-hypothesis.

pub mod shape;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

pub use shape::{alg_twist, alg_twists, compositions, rho_exponents, AlgTwist, IsobaricShape};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeightError {
    #[error("invalid partition {0:?}: parts must be positive")]
    InvalidPartition(Vec<i64>),
    #[error("label count does not match part count")]
    LabelCount,
    #[error("labels must be pairwise distinct")]
    DuplicateLabels,
    #[error("twist flag must be 0 or 1, got {0}")]
    TwistFlag(u8),
    #[error("index {0} out of range 1..={1}")]
    IndexOutOfRange(usize, usize),
    #[error("weight at embedding {0} is not weakly decreasing")]
    NotDecreasing(usize),
    #[error("weight vectors must all have length {0}")]
    RankMismatch(usize),
    #[error("weight has no embeddings")]
    NoEmbeddings,
    #[error("infinity-type is not regular")]
    NotRegular,
    #[error("infinity-type is not conjugate self-dual")]
    NotSelfDual,
    #[error("no critical points: a middle-class coincidence occurs")]
    NoCriticalPoints,
}

fn half(k: i64) -> BigRational {
    BigRational::new(BigInt::from(k), BigInt::from(2))
}

fn int(k: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// μ = (μ_ι, μ_ῑ) at each of the d archimedean places.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HighestWeight {
    n: usize,
    places: Vec<(Vec<i64>, Vec<i64>)>,
}

/// μ^∨_j = −μ_{n−j+1}.
pub fn dual_weight(mu: &[i64]) -> Vec<i64> {
    mu.iter().rev().map(|x| -x).collect()
}

impl HighestWeight {
    pub fn new(places: Vec<(Vec<i64>, Vec<i64>)>) -> Result<Self, WeightError> {
        let n = places.first().ok_or(WeightError::NoEmbeddings)?.0.len();
        if n == 0 {
            return Err(WeightError::RankMismatch(0));
        }
        for (k, (a, b)) in places.iter().enumerate() {
            if a.len() != n || b.len() != n {
                return Err(WeightError::RankMismatch(n));
            }
            if a.windows(2).any(|w| w[0] < w[1]) || b.windows(2).any(|w| w[0] < w[1]) {
                return Err(WeightError::NotDecreasing(k));
            }
        }
        Ok(HighestWeight { n, places })
    }

    /// Weight with μ_ῑ = μ_ι^∨ at every place.
    pub fn conjugate_self_dual(iota: Vec<Vec<i64>>) -> Result<Self, WeightError> {
        Self::new(
            iota.into_iter()
                .map(|m| {
                    let d = dual_weight(&m);
                    (m, d)
                })
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.places.len()
    }

    pub fn places(&self) -> &[(Vec<i64>, Vec<i64>)] {
        &self.places
    }

    pub fn iota(&self, v: usize) -> &[i64] {
        &self.places[v].0
    }

    pub fn iota_bar(&self, v: usize) -> &[i64] {
        &self.places[v].1
    }
}

/// Exponents a_{ι,i} per embedding of Σ, stored doubled.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfinityType {
    doubled: Vec<Vec<i64>>,
    #[serde(serialize_with = "ser_rational")]
    shift: BigRational,
}

fn ser_rational<S: serde::Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&fmt_rational(q))
}

pub fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl InfinityType {
    /// From doubled exponents (2a ∈ Z); entries are sorted decreasing per embedding.
    pub fn from_doubled(mut doubled: Vec<Vec<i64>>, shift: BigRational) -> Self {
        for v in &mut doubled {
            v.sort_unstable_by(|a, b| b.cmp(a));
        }
        InfinityType { doubled, shift }
    }

    /// From exact exponents, which must be integers or half-integers.
    pub fn from_rationals(a: &[Vec<BigRational>], shift: BigRational) -> Option<Self> {
        let mut doubled = Vec::new();
        for v in a {
            let mut row = Vec::new();
            for x in v {
                let y = x * int(2);
                if !y.is_integer() {
                    return None;
                }
                row.push(i64::try_from(y.to_integer()).ok()?);
            }
            doubled.push(row);
        }
        Some(Self::from_doubled(doubled, shift))
    }

    pub fn rank(&self) -> usize {
        self.doubled.first().map_or(0, Vec::len)
    }

    pub fn embeddings(&self) -> usize {
        self.doubled.len()
    }

    pub fn doubled(&self) -> &[Vec<i64>] {
        &self.doubled
    }

    pub fn shift(&self) -> &BigRational {
        &self.shift
    }

    pub fn exponents(&self, v: usize) -> Vec<BigRational> {
        self.doubled[v].iter().map(|&x| half(x)).collect()
    }

    pub fn is_regular(&self) -> bool {
        self.doubled
            .iter()
            .all(|v| v.windows(2).all(|w| w[0] != w[1]))
    }

    /// Exponents closed under negation at every embedding.
    pub fn is_conjugate_self_dual(&self) -> bool {
        self.doubled.iter().all(|v| {
            let mut neg: Vec<i64> = v.iter().map(|x| -x).collect();
            neg.sort_unstable_by(|a, b| b.cmp(a));
            &neg == v
        })
    }

    /// Reorders the embedding blocks by `perm`.
    pub fn permute_embeddings(&self, perm: &[usize]) -> Self {
        InfinityType {
            doubled: perm.iter().map(|&k| self.doubled[k].clone()).collect(),
            shift: self.shift.clone(),
        }
    }
}

/// a_{ι,i} = ℓ(μ_ι, i) + r with ℓ(μ_ι, i) = −μ_{ι,n−i+1} − r + (n+1)/2 − i.
pub fn infinity_type(mu: &HighestWeight, r: &BigRational) -> InfinityType {
    let n = mu.n() as i64;
    let doubled = (0..mu.d())
        .map(|v| {
            let m = mu.iota(v);
            (1..=n)
                .map(|i| -2 * m[(n - i) as usize] + (n + 1) - 2 * i)
                .collect()
        })
        .collect();
    InfinityType::from_doubled(doubled, r.clone())
}

/// True iff a_{ι,i} + b_{ι,j} ≠ r + s for all ι, i, j.
pub fn no_middle_class(
    a: &InfinityType,
    b: &InfinityType,
    r: &BigRational,
    s: &BigRational,
) -> bool {
    let target = (r + s) * int(2);
    a.doubled
        .iter()
        .zip(&b.doubled)
        .all(|(av, bv)| av.iter().all(|x| bv.iter().all(|y| int(x + y) != target)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CritKind {
    RankinSelberg,
    Asai,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AsaiSign {
    /// Sign (−1)^n: positive odd or non-positive even integers.
    Same,
    /// Sign (−1)^{n−1}: positive even or negative odd integers.
    Opposite,
}

impl AsaiSign {
    fn admits(self, m: &BigInt) -> bool {
        let odd = m.is_odd();
        match self {
            AsaiSign::Same => (m.is_positive() && odd) || (!m.is_positive() && !odd),
            AsaiSign::Opposite => (m.is_positive() && !odd) || (m.is_negative() && odd),
        }
    }
}

/// The critical points as a half-open window (lo, hi] on a lattice, with an optional parity filter.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalSet {
    pub kind: CritKind,
    #[serde(serialize_with = "ser_rational")]
    pub lo_exclusive: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub hi_inclusive: BigRational,
    pub parity: Option<AsaiSign>,
}

impl CriticalSet {
    /// Lattice offset: 1/2 + Z for Rankin-Selberg, Z for Asai.
    fn offset(&self) -> BigRational {
        match self.kind {
            CritKind::RankinSelberg => half(1),
            CritKind::Asai => BigRational::zero(),
        }
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        let m = x - self.offset();
        if !m.is_integer() || x <= &self.lo_exclusive || x > &self.hi_inclusive {
            return false;
        }
        self.parity.is_none_or(|p| p.admits(&m.to_integer()))
    }

    pub fn enumerate(&self) -> Vec<BigRational> {
        let off = self.offset();
        let mut m = (&self.lo_exclusive - &off).floor() + int(1);
        let mut out = Vec::new();
        while &m + &off <= self.hi_inclusive {
            let x = &m + &off;
            if self.contains(&x) {
                out.push(x);
            }
            m += int(1);
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.enumerate().is_empty()
    }
}

/// {1/2 + m : −M < 1/2 + m + r + s ≤ M}, M = min |a_{ι,i} + b_{ι,j} − r − s|.
pub fn crit_rankin_selberg(
    a: &InfinityType,
    b: &InfinityType,
    r: &BigRational,
    s: &BigRational,
) -> Result<CriticalSet, WeightError> {
    if a.rank() != b.rank() + 1 {
        return Err(WeightError::RankMismatch(a.rank().saturating_sub(1)));
    }
    if a.embeddings() != b.embeddings() || a.embeddings() == 0 {
        return Err(WeightError::NoEmbeddings);
    }
    if !no_middle_class(a, b, r, s) {
        return Err(WeightError::NoCriticalPoints);
    }
    let rs = r + s;
    let mut big_m: Option<BigRational> = None;
    for (av, bv) in a.doubled.iter().zip(&b.doubled) {
        for x in av {
            for y in bv {
                let v = (half(x + y) - &rs).abs();
                if big_m.as_ref().is_none_or(|m| &v < m) {
                    big_m = Some(v);
                }
            }
        }
    }
    // rank n − 1 = 0 leaves no pairs; nothing constrains the strip
    let big_m = big_m.ok_or(WeightError::NoCriticalPoints)?;
    Ok(CriticalSet {
        kind: CritKind::RankinSelberg,
        lo_exclusive: -&big_m - &rs,
        hi_inclusive: &big_m - &rs,
        parity: None,
    })
}

/// Integers m with max(negative differences) < m ≤ min(positive differences), parity-filtered.
pub fn crit_asai(a: &InfinityType, sign: AsaiSign) -> Result<CriticalSet, WeightError> {
    if !a.is_regular() || a.rank() < 2 {
        return Err(WeightError::NotRegular);
    }
    if !a.is_conjugate_self_dual() {
        return Err(WeightError::NotSelfDual);
    }
    let mut lo: Option<i64> = None;
    let mut hi: Option<i64> = None;
    for v in &a.doubled {
        for (i, x) in v.iter().enumerate() {
            for (j, y) in v.iter().enumerate() {
                if i == j {
                    continue;
                }
                let d = x - y;
                if d < 0 {
                    lo = Some(lo.map_or(d, |l| l.max(d)));
                } else {
                    hi = Some(hi.map_or(d, |h| h.min(d)));
                }
            }
        }
    }
    let (lo, hi) = (
        lo.ok_or(WeightError::NotRegular)?,
        hi.ok_or(WeightError::NotRegular)?,
    );
    Ok(CriticalSet {
        kind: CritKind::Asai,
        lo_exclusive: half(lo),
        hi_inclusive: half(hi),
        parity: Some(sign),
    })
}

/// Interlacing a_1 ≥ −b_{n−1} ≥ a_2 ≥ … ≥ −b_1 ≥ a_n.
fn interlaces(a: &[i64], b: &[i64]) -> bool {
    let n = a.len();
    (0..n - 1).all(|k| a[k] >= -b[n - 2 - k] && -b[n - 2 - k] >= a[k + 1])
}

/// Hyp. piano: the ι-chain on μ, μ′ and the ῑ-chain on the dual weights, at every place.
pub fn piano_check(mu: &HighestWeight, mu_p: &HighestWeight) -> Result<bool, WeightError> {
    if mu.n() != mu_p.n() + 1 {
        return Err(WeightError::RankMismatch(mu.n().saturating_sub(1)));
    }
    if mu.d() != mu_p.d() {
        return Err(WeightError::NoEmbeddings);
    }
    Ok((0..mu.d()).all(|v| {
        interlaces(mu.iota(v), mu_p.iota(v))
            && interlaces(&dual_weight(mu.iota_bar(v)), &dual_weight(mu_p.iota_bar(v)))
    }))
}

/// All consecutive gaps of μ_ι are at least 2.
pub fn sufficiently_regular(mu: &HighestWeight) -> bool {
    (0..mu.d()).all(|v| mu.iota(v).windows(2).all(|w| w[0] - w[1] >= 2))
}

/// b_n = d·n(n−1)/2.
pub fn bottom_degree(n: u64, d: u64) -> u64 {
    d * n * n.saturating_sub(1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hw(v: &[&[i64]]) -> HighestWeight {
        HighestWeight::conjugate_self_dual(v.iter().map(|x| x.to_vec()).collect()).unwrap()
    }

    fn r0() -> BigRational {
        BigRational::zero()
    }

    #[test]
    fn infinity_type_examples() {
        assert_eq!(
            infinity_type(&hw(&[&[0, 0]]), &r0()).doubled()[0],
            vec![1, -1]
        );
        assert_eq!(
            infinity_type(&hw(&[&[0, 0, 0]]), &r0()).doubled()[0],
            vec![2, 0, -2]
        );
        assert_eq!(
            infinity_type(&hw(&[&[2, 0]]), &r0()).doubled()[0],
            vec![1, -5]
        );
    }

    #[test]
    fn middle_class_examples() {
        let a = InfinityType::from_doubled(vec![vec![1, -1]], r0());
        let b = InfinityType::from_doubled(vec![vec![0]], r0());
        assert!(no_middle_class(&a, &b, &r0(), &r0()));
        let a = InfinityType::from_doubled(vec![vec![2, 0, -2]], r0());
        let b = InfinityType::from_doubled(vec![vec![0, -4]], r0());
        assert!(!no_middle_class(&a, &b, &r0(), &r0()));
    }

    #[test]
    fn rankin_selberg_strip() {
        let a = InfinityType::from_doubled(vec![vec![1, -1]], r0());
        let b = InfinityType::from_doubled(vec![vec![0]], r0());
        let c = crit_rankin_selberg(&a, &b, &r0(), &r0()).unwrap();
        assert_eq!(c.enumerate(), vec![half(1)]);
        let a = InfinityType::from_doubled(vec![vec![5, -1]], r0());
        let b = InfinityType::from_doubled(vec![vec![2]], r0());
        let c = crit_rankin_selberg(&a, &b, &r0(), &r0()).unwrap();
        assert_eq!(c.enumerate(), vec![half(1)]);
    }

    #[test]
    fn asai_windows() {
        let a = InfinityType::from_doubled(vec![vec![1, -1]], r0());
        let same = crit_asai(&a, AsaiSign::Same).unwrap().enumerate();
        assert_eq!(same, vec![int(0), int(1)]);
        assert!(crit_asai(&a, AsaiSign::Opposite).unwrap().is_empty());
        let a = InfinityType::from_doubled(vec![vec![3, -3]], r0());
        let same = crit_asai(&a, AsaiSign::Same).unwrap().enumerate();
        assert_eq!(same, vec![int(-2), int(0), int(1), int(3)]);
        let bad = InfinityType::from_doubled(vec![vec![1, 1]], r0());
        assert_eq!(
            crit_asai(&bad, AsaiSign::Same),
            Err(WeightError::NotRegular)
        );
    }

    #[test]
    fn piano_examples() {
        assert!(piano_check(&hw(&[&[0, 0]]), &hw(&[&[0]])).unwrap());
        assert!(!piano_check(&hw(&[&[1, -1]]), &hw(&[&[2]])).unwrap());
        assert!(piano_check(&hw(&[&[0, 0]]), &hw(&[&[0], &[0]])).is_err());
    }

    #[test]
    fn regularity_and_bottom_degree() {
        assert!(sufficiently_regular(&hw(&[&[4, 2, 0]])));
        assert!(!sufficiently_regular(&hw(&[&[1, 0]])));
        assert!(!sufficiently_regular(&hw(&[&[3, 1, 0]])));
        assert_eq!(bottom_degree(1, 7), 0);
        assert_eq!(bottom_degree(2, 1), 1);
        assert_eq!(bottom_degree(5, 3), 30);
    }

    #[test]
    fn rejects_increasing_weight() {
        assert_eq!(
            HighestWeight::new(vec![(vec![0, 1], vec![0, 0])]),
            Err(WeightError::NotDecreasing(0))
        );
    }
}
