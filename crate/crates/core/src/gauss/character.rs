use num_integer::Integer;

use super::GaussError;
use crate::algebra::Cyclotomic;

/// A Dirichlet character mod N with values in the `order`-th roots of unity.
///
/// `exps[a]` is k with χ(a) = ζ_order^k, or None off the units.
#[derive(Clone, Debug, PartialEq)]
pub struct DirichletChar {
    modulus: u32,
    order: u32,
    exps: Vec<Option<u32>>,
    values: Vec<Cyclotomic>,
    conductor: u32,
    label: String,
}

impl DirichletChar {
    pub fn new(modulus: u32, order: u32, exps: Vec<Option<u32>>, label: &str) -> Result<Self, GaussError> {
        if modulus == 0 || order == 0 {
            return Err(GaussError::InvalidParam("modulus and order must be positive".into()));
        }
        if exps.len() != modulus as usize {
            return Err(GaussError::InvalidParam(format!(
                "{} values for modulus {}",
                exps.len(),
                modulus
            )));
        }
        let n = modulus;
        for a in 0..n {
            let unit = a.gcd(&n) == 1;
            match exps[a as usize] {
                Some(k) if !unit || k >= order => {
                    return Err(GaussError::InvalidParam(format!("bad value at {}", a)));
                }
                None if unit => {
                    return Err(GaussError::InvalidParam(format!("missing value at unit {}", a)));
                }
                _ => {}
            }
        }
        if exps[(1 % n) as usize] != Some(0) {
            return Err(GaussError::NotMultiplicative("χ(1) ≠ 1".into()));
        }
        for a in 0..n {
            for b in a..n {
                if let (Some(x), Some(y)) = (exps[a as usize], exps[b as usize]) {
                    let ab = ((a as u64 * b as u64) % n as u64) as usize;
                    if exps[ab] != Some((x + y) % order) {
                        return Err(GaussError::NotMultiplicative(format!("at {}·{}", a, b)));
                    }
                }
            }
        }
        let g = exps.iter().flatten().fold(order, |g, &k| g.gcd(&k));
        let order = order / g;
        let exps: Vec<Option<u32>> = exps.into_iter().map(|k| k.map(|k| k / g)).collect();
        let values = exps
            .iter()
            .map(|k| match k {
                Some(k) => Cyclotomic::root_of_unity(order, *k as i64),
                None => Cyclotomic::zero(order),
            })
            .collect();
        let conductor = (1..=n)
            .filter(|d| n.is_multiple_of(*d))
            .find(|&d| {
                (0..n).all(|a| a % d != 1 % d || exps[a as usize].is_none_or(|k| k == 0))
            })
            .unwrap_or(n);
        Ok(DirichletChar {
            modulus,
            order,
            exps,
            values,
            conductor,
            label: label.to_string(),
        })
    }

    pub fn trivial(modulus: u32) -> Result<Self, GaussError> {
        if modulus == 0 {
            return Err(GaussError::InvalidParam("modulus must be positive".into()));
        }
        let exps = (0..modulus).map(|a| (a.gcd(&modulus) == 1).then_some(0)).collect();
        DirichletChar::new(modulus, 1, exps, &format!("χ{}.0", modulus))
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// The least m with every value an m-th root of unity.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn exponent(&self, a: u32) -> Option<u32> {
        self.exps[(a % self.modulus) as usize]
    }

    /// χ(a), exactly; zero off the units.
    pub fn value(&self, a: i64) -> &Cyclotomic {
        &self.values[a.rem_euclid(self.modulus as i64) as usize]
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_primitive(&self) -> bool {
        self.conductor == self.modulus
    }

    pub fn is_principal(&self) -> bool {
        self.order == 1
    }

    /// χ(−1) as ±1.
    pub fn parity(&self) -> i32 {
        match self.exponent(self.modulus - 1) {
            Some(0) | None => 1,
            _ => -1,
        }
    }

    pub fn conj(&self) -> DirichletChar {
        let exps = self.exps.iter().map(|k| k.map(|k| (self.order - k) % self.order)).collect();
        DirichletChar::new(self.modulus, self.order, exps, &format!("{}̄", self.label))
            .expect("conjugate of a character")
    }
}

fn factor(mut n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn mult_order(g: u32, q: u32) -> u32 {
    let mut x = g % q;
    let mut k = 1;
    while x != 1 % q {
        x = ((x as u64 * g as u64) % q as u64) as u32;
        k += 1;
    }
    k
}

/// Independent generators of (Z/q)^× for a prime power q = p^e, with their orders.
fn local_generators(p: u32, e: u32) -> Vec<(u32, u32)> {
    let q = p.pow(e);
    if p == 2 {
        return match e {
            1 => vec![],
            2 => vec![(3, 2)],
            _ => vec![(q - 1, 2), (5, q / 4)],
        };
    }
    let phi = q / p * (p - 1);
    let g = (2..q).find(|&g| g % p != 0 && mult_order(g, q) == phi).expect("primitive root");
    vec![(g, phi)]
}

/// Generators of (Z/n)^× lifted by the Chinese remainder theorem.
fn generators(n: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for (p, e) in factor(n) {
        let q = p.pow(e);
        let rest = n / q;
        for (g, o) in local_generators(p, e) {
            let x = (0..rest).map(|t| g + q * t).find(|x| x % rest == 1 % rest).expect("crt");
            out.push((x % n, o));
        }
    }
    out
}

/// Every Dirichlet character mod n, in a fixed order.
pub fn characters(n: u32) -> Result<Vec<DirichletChar>, GaussError> {
    if n == 0 {
        return Err(GaussError::InvalidParam("modulus must be positive".into()));
    }
    let gens = generators(n);
    let l = gens.iter().fold(1u32, |l, &(_, o)| l.lcm(&o));
    let total: u32 = gens.iter().map(|&(_, o)| o).product();
    let mut logs: Vec<Option<Vec<u32>>> = vec![None; n as usize];
    for idx in 0..total {
        let mut rem = idx;
        let mut x = 1 % n;
        let mut v = Vec::with_capacity(gens.len());
        for &(g, o) in &gens {
            let j = rem % o;
            rem /= o;
            for _ in 0..j {
                x = ((x as u64 * g as u64) % n as u64) as u32;
            }
            v.push(j);
        }
        logs[x as usize] = Some(v);
    }
    let mut out = Vec::with_capacity(total as usize);
    for idx in 0..total {
        let mut rem = idx;
        let c: Vec<u32> = gens
            .iter()
            .map(|&(_, o)| {
                let j = rem % o;
                rem /= o;
                j
            })
            .collect();
        let exps = logs
            .iter()
            .map(|lv| {
                lv.as_ref().map(|lv| {
                    gens.iter()
                        .zip(&c)
                        .zip(lv)
                        .map(|((&(_, o), &ci), &li)| (ci as u64 * li as u64 * (l / o) as u64) % l as u64)
                        .sum::<u64>() as u32
                        % l
                })
            })
            .collect();
        out.push(DirichletChar::new(n, l, exps, &format!("χ{}.{}", n, idx))?);
    }
    Ok(out)
}

pub fn primitive_characters(n: u32) -> Result<Vec<DirichletChar>, GaussError> {
    Ok(characters(n)?.into_iter().filter(DirichletChar::is_primitive).collect())
}

fn jacobi(a: i64, n: u64) -> i32 {
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut t = 1;
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

/// The Kronecker symbol (d/a) for a ≥ 1.
pub fn kronecker_symbol(d: i64, mut a: u64) -> i32 {
    let mut t = 1;
    while a.is_multiple_of(2) {
        a /= 2;
        t *= match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    t * jacobi(d, a)
}

/// The character a ↦ (D/a) mod |D|.
pub fn kronecker(d: i64) -> Result<DirichletChar, GaussError> {
    if !is_fundamental(d) {
        return Err(GaussError::NotFundamental(d));
    }
    let n = d.unsigned_abs() as u32;
    let exps = (0..n)
        .map(|a| {
            let a = if a == 0 { n } else { a };
            match kronecker_symbol(d, a as u64) {
                0 => None,
                1 => Some(0),
                _ => Some(1),
            }
        })
        .collect();
    DirichletChar::new(n, 2, exps, &format!("χ_{}", d))
}

fn squarefree(n: u64) -> bool {
    let mut k = 2;
    while k * k <= n {
        if n.is_multiple_of(k * k) {
            return false;
        }
        k += 1;
    }
    true
}

pub fn is_fundamental(d: i64) -> bool {
    if d == 0 || d == 1 || d.unsigned_abs() > u32::MAX as u64 {
        return false;
    }
    match d.rem_euclid(4) {
        1 => squarefree(d.unsigned_abs()),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && squarefree(m.unsigned_abs())
        }
        _ => false,
    }
}

/// Fundamental discriminants in lo..=hi, ascending.
pub fn fundamental_discriminants(lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi).filter(|&d| is_fundamental(d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn character_counts() {
        for n in 1..=60u32 {
            let chars = characters(n).unwrap();
            let phi = (1..=n).filter(|a| a.gcd(&n) == 1).count();
            assert_eq!(chars.len(), phi, "{}", n);
        }
        assert_eq!(primitive_characters(4).unwrap().len(), 1);
        assert_eq!(primitive_characters(8).unwrap().len(), 2);
        assert_eq!(primitive_characters(2).unwrap().len(), 0);
        assert_eq!(primitive_characters(1).unwrap().len(), 1);
        assert_eq!(primitive_characters(9).unwrap().len(), 4);
    }

    #[test]
    fn kronecker_values() {
        let chi = kronecker(-4).unwrap();
        assert_eq!(chi.exponent(1), Some(0));
        assert_eq!(chi.exponent(3), Some(1));
        assert!(chi.value(3).add(&Cyclotomic::one()).is_zero());
        assert!(chi.is_primitive());
        assert_eq!(chi.parity(), -1);
        assert!(kronecker(-6).is_err());
        assert!(kronecker(-24).unwrap().is_primitive());
    }

    #[test]
    fn fundamental() {
        assert_eq!(
            fundamental_discriminants(-24, -1),
            vec![-24, -23, -20, -19, -15, -11, -8, -7, -4, -3]
        );
    }

    #[test]
    fn rejects_non_multiplicative() {
        let bad = DirichletChar::new(5, 2, vec![None, Some(0), Some(1), Some(0), Some(1)], "x");
        assert!(bad.is_err());
    }
}
