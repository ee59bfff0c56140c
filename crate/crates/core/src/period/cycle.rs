//! n-cycles on {1..n} and the CM types they induce.

use std::collections::BTreeSet;

use super::PeriodError;

/// A permutation of {1..n} of order exactly n, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleDatum {
    images: Vec<u32>,
}

impl CycleDatum {
    /// `images[i-1]` is s(i).
    pub fn new(images: Vec<u32>) -> Result<CycleDatum, PeriodError> {
        let n = images.len();
        if n == 0 {
            return Err(PeriodError::InvalidParam("empty permutation".into()));
        }
        let distinct: BTreeSet<u32> = images.iter().copied().collect();
        if distinct.len() != n || distinct.iter().any(|&v| v == 0 || v as usize > n) {
            return Err(PeriodError::InvalidParam(format!(
                "{:?} is not a permutation of 1..{}",
                images, n
            )));
        }
        let mut len = 1;
        let mut x = images[0];
        while x != 1 {
            x = images[x as usize - 1];
            len += 1;
        }
        if len != n {
            return Err(PeriodError::InvalidParam(format!(
                "{:?} is not an {}-cycle",
                images, n
            )));
        }
        Ok(CycleDatum { images })
    }

    /// i ↦ i+1 mod n.
    pub fn standard(n: u32) -> CycleDatum {
        CycleDatum {
            images: (1..=n).map(|i| i % n + 1).collect(),
        }
    }

    /// The n-cycle visiting `order[0] → order[1] → … → order[0]`.
    pub fn from_order(order: &[u32]) -> Result<CycleDatum, PeriodError> {
        let n = order.len();
        let mut images = vec![0; n];
        for k in 0..n {
            let i = order[k] as usize;
            if i == 0 || i > n {
                return Err(PeriodError::InvalidParam(format!("bad cycle order {:?}", order)));
            }
            images[i - 1] = order[(k + 1) % n];
        }
        CycleDatum::new(images)
    }

    pub fn n(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// s^k(i), for any integer k.
    pub fn pow_apply(&self, k: i64, i: u32) -> u32 {
        let n = self.n() as i64;
        let mut x = i;
        for _ in 0..k.rem_euclid(n) {
            x = self.images[x as usize - 1];
        }
        x
    }
}

/// #{1 ≤ k ≤ n−1 : s^k(i) < i}.
pub fn count_descents(c: &CycleDatum, i: u32) -> Result<u32, PeriodError> {
    if i == 0 || i > c.n() {
        return Err(PeriodError::InvalidParam(format!(
            "index {} outside 1..{}",
            i,
            c.n()
        )));
    }
    Ok((1..c.n() as i64)
        .filter(|&k| c.pow_apply(k, i) < i)
        .count() as u32)
}

/// The index sets (Ψ_{ι,k}, Ψ_{ῑ,k}) = ({i : i > s^k(i)}, {i : i < s^k(i)}).
pub fn cm_types_induced(
    c: &CycleDatum,
    k: u32,
) -> Result<(BTreeSet<u32>, BTreeSet<u32>), PeriodError> {
    let n = c.n();
    if k == 0 || k >= n {
        return Err(PeriodError::InvalidParam(format!(
            "shift {} outside 1..{}",
            k,
            n.saturating_sub(1)
        )));
    }
    let mut plain = BTreeSet::new();
    let mut bar = BTreeSet::new();
    for i in 1..=n {
        let j = c.pow_apply(k as i64, i);
        if i > j {
            plain.insert(i);
        } else {
            bar.insert(i);
        }
    }
    Ok((plain, bar))
}

/// Every n-cycle on {1..n}, in lexicographic order of their cycle notation from 1.
pub fn all_cycles(n: u32) -> Vec<CycleDatum> {
    fn rec(rest: &mut Vec<u32>, order: &mut Vec<u32>, out: &mut Vec<CycleDatum>) {
        if rest.is_empty() {
            out.push(CycleDatum::from_order(order).expect("valid order"));
            return;
        }
        for k in 0..rest.len() {
            let x = rest.remove(k);
            order.push(x);
            rec(rest, order, out);
            order.pop();
            rest.insert(k, x);
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        return out;
    }
    let mut rest: Vec<u32> = (2..=n).collect();
    let mut order = vec![1];
    rec(&mut rest, &mut order, &mut out);
    out
}
