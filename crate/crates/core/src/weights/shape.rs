//! Isobaric shapes: ordered partitions of n with ρ-shift and twist data.

use serde::Serialize;

use super::WeightError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsobaricShape {
    parts: Vec<u32>,
    labels: Vec<String>,
    /// Twist flag e ∈ {0, 1}.
    e: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AlgTwist {
    NoTwist,
    EtaTwist,
}

impl AlgTwist {
    /// The exponent e_i ∈ {0, −1} of φ in the algebraic normalization.
    pub fn exponent(self) -> i32 {
        match self {
            AlgTwist::NoTwist => 0,
            AlgTwist::EtaTwist => -1,
        }
    }
}

impl IsobaricShape {
    pub fn new(parts: &[i64]) -> Result<Self, WeightError> {
        let labels = (1..=parts.len()).map(|i| format!("Pi{}", i)).collect();
        Self::with_labels(parts, labels, 0)
    }

    pub fn with_labels(parts: &[i64], labels: Vec<String>, e: u8) -> Result<Self, WeightError> {
        if parts.is_empty() || parts.iter().any(|&p| p <= 0) {
            return Err(WeightError::InvalidPartition(parts.to_vec()));
        }
        if labels.len() != parts.len() {
            return Err(WeightError::LabelCount);
        }
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != labels.len() {
            return Err(WeightError::DuplicateLabels);
        }
        if e > 1 {
            return Err(WeightError::TwistFlag(e));
        }
        Ok(IsobaricShape {
            parts: parts.iter().map(|&p| p as u32).collect(),
            labels,
            e,
        })
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn twist_flag(&self) -> u8 {
        self.e
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn n(&self) -> u32 {
        self.parts.iter().sum()
    }
}

/// a_i = Σ_{j>i} n_j − Σ_{j<i} n_j.
pub fn rho_exponents(shape: &IsobaricShape) -> Vec<i64> {
    let p = shape.parts();
    (0..p.len())
        .map(|i| {
            let after: i64 = p[i + 1..].iter().map(|&x| x as i64).sum();
            let before: i64 = p[..i].iter().map(|&x| x as i64).sum();
            after - before
        })
        .collect()
}

/// Π_i^alg is Π_i when n ≡ n_i mod 2 and Π_i ⊗ η otherwise; `i` is 1-based.
pub fn alg_twist(shape: &IsobaricShape, i: usize) -> Result<AlgTwist, WeightError> {
    if i == 0 || i > shape.k() {
        return Err(WeightError::IndexOutOfRange(i, shape.k()));
    }
    Ok(if (shape.n() - shape.parts()[i - 1]).is_multiple_of(2) {
        AlgTwist::NoTwist
    } else {
        AlgTwist::EtaTwist
    })
}

pub fn alg_twists(shape: &IsobaricShape) -> Vec<AlgTwist> {
    (1..=shape.k())
        .map(|i| alg_twist(shape, i).expect("index in range"))
        .collect()
}

/// All ordered partitions of n, in lexicographic order.
pub fn compositions(n: u32) -> Vec<Vec<u32>> {
    fn rec(rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for first in 1..=rest {
            cur.push(first);
            rec(rest - first, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, &mut Vec::new(), &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rho_examples() {
        assert_eq!(rho_exponents(&IsobaricShape::new(&[4]).unwrap()), vec![0]);
        assert_eq!(
            rho_exponents(&IsobaricShape::new(&[1, 1]).unwrap()),
            vec![1, -1]
        );
        assert_eq!(
            rho_exponents(&IsobaricShape::new(&[2, 1, 2]).unwrap()),
            vec![3, 0, -3]
        );
    }

    #[test]
    fn twist_examples() {
        let s = IsobaricShape::new(&[2, 1, 1]).unwrap();
        assert_eq!(
            alg_twists(&s),
            vec![AlgTwist::NoTwist, AlgTwist::EtaTwist, AlgTwist::EtaTwist]
        );
        assert_eq!(
            alg_twist(&IsobaricShape::new(&[3]).unwrap(), 1).unwrap(),
            AlgTwist::NoTwist
        );
        assert_eq!(
            alg_twist(&IsobaricShape::new(&[2, 1]).unwrap(), 1).unwrap(),
            AlgTwist::EtaTwist
        );
        assert!(alg_twist(&s, 4).is_err());
        assert_eq!(AlgTwist::EtaTwist.exponent(), -1);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(IsobaricShape::new(&[]).is_err());
        assert!(IsobaricShape::new(&[2, 0]).is_err());
        assert!(IsobaricShape::with_labels(&[1, 1], vec!["A".into(), "A".into()], 0).is_err());
    }

    #[test]
    fn composition_counts() {
        for n in 1..=8 {
            assert_eq!(compositions(n).len(), 1 << (n - 1));
        }
        assert_eq!(
            compositions(3),
            vec![vec![1, 1, 1], vec![1, 2], vec![2, 1], vec![3]]
        );
    }
}
