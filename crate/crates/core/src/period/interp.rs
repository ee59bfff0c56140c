//! Tensor Newton interpolation over integer grids, in exact arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::PeriodError;

/// A polynomial in several variables, in the Newton basis of a tensor grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonTensor {
    axes: Vec<Vec<i64>>,
    coeffs: Vec<BigRational>,
}

fn strides(axes: &[Vec<i64>]) -> Vec<usize> {
    let mut s = vec![1; axes.len()];
    for v in (0..axes.len().saturating_sub(1)).rev() {
        s[v] = s[v + 1] * axes[v + 1].len();
    }
    s
}

fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

impl NewtonTensor {
    /// Interpolates `f` on the product of `axes`; each axis must have distinct nodes.
    pub fn fit(
        axes: Vec<Vec<i64>>,
        mut f: impl FnMut(&[i64]) -> Result<i64, PeriodError>,
    ) -> Result<NewtonTensor, PeriodError> {
        for a in &axes {
            let mut s = a.clone();
            s.sort_unstable();
            s.dedup();
            if a.is_empty() || s.len() != a.len() {
                return Err(PeriodError::InvalidParam(format!("bad grid axis {:?}", a)));
            }
        }
        let st = strides(&axes);
        let total: usize = axes.iter().map(Vec::len).product();
        let mut coeffs = Vec::with_capacity(total);
        let mut point = vec![0i64; axes.len()];
        for flat in 0..total {
            for v in 0..axes.len() {
                point[v] = axes[v][(flat / st[v]) % axes[v].len()];
            }
            coeffs.push(rat(f(&point)?));
        }
        for v in 0..axes.len() {
            let len = axes[v].len();
            for base in 0..total {
                if !(base / st[v]).is_multiple_of(len) {
                    continue;
                }
                for j in 1..len {
                    for i in (j..len).rev() {
                        let hi = base + i * st[v];
                        let lo = base + (i - 1) * st[v];
                        let diff = &coeffs[hi] - &coeffs[lo];
                        coeffs[hi] = diff / rat(axes[v][i] - axes[v][i - j]);
                    }
                }
            }
        }
        Ok(NewtonTensor { axes, coeffs })
    }

    /// The degree in each variable; −1 marks the zero polynomial.
    pub fn degrees(&self) -> Vec<i64> {
        let st = strides(&self.axes);
        let mut deg = vec![-1i64; self.axes.len()];
        for (flat, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for v in 0..self.axes.len() {
                let k = ((flat / st[v]) % self.axes[v].len()) as i64;
                deg[v] = deg[v].max(k);
            }
        }
        deg
    }

    pub fn eval(&self, x: &[i64]) -> BigRational {
        let st = strides(&self.axes);
        let mut acc = BigRational::zero();
        for (flat, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut term = c.clone();
            for v in 0..self.axes.len() {
                let k = (flat / st[v]) % self.axes[v].len();
                for j in 0..k {
                    term *= rat(x[v] - self.axes[v][j]);
                }
            }
            acc += term;
        }
        acc
    }
}

/// Result of comparing an engine-derived function with a closed form as polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCheck {
    pub engine_degrees: Vec<i64>,
    pub closed_degrees: Vec<i64>,
    pub probes: usize,
    pub probe_mismatches: usize,
}

impl PolyCheck {
    pub fn passed(&self) -> bool {
        self.engine_degrees == self.closed_degrees && self.probe_mismatches == 0
    }
}

/// Fits both functions on the grid and compares degrees and off-grid values.
pub fn compare_on_grid(
    axes: Vec<Vec<i64>>,
    engine: impl FnMut(&[i64]) -> Result<i64, PeriodError>,
    closed: impl Fn(&[i64]) -> BigRational,
    probes: &[Vec<i64>],
) -> Result<PolyCheck, PeriodError> {
    let e = NewtonTensor::fit(axes.clone(), engine)?;
    let mut as_int = |x: &[i64]| -> Result<i64, PeriodError> {
        let v = closed(x);
        if !v.is_integer() {
            return Err(PeriodError::InvalidParam(format!(
                "closed form is not integral at {:?}",
                x
            )));
        }
        Ok(i64::try_from(v.to_integer()).unwrap_or(i64::MAX))
    };
    let c = NewtonTensor::fit(axes, &mut as_int)?;
    let mismatches = probes
        .iter()
        .filter(|p| e.eval(p) != closed(p) || c.eval(p) != closed(p))
        .count();
    Ok(PolyCheck {
        engine_degrees: e.degrees(),
        closed_degrees: c.degrees(),
        probes: probes.len(),
        probe_mismatches: mismatches,
    })
}

/// A rational from a numerator and a positive denominator.
pub fn frac(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn one() -> BigRational {
    BigRational::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_polynomial_and_degrees() {
        let axes = vec![(2..=8).collect(), (-2..=3).collect(), (1..=3).collect()];
        let p = |x: &[i64]| x[0] * x[0] * x[1] * x[2] - 3 * x[0] + 7;
        let t = NewtonTensor::fit(axes, |x| Ok(p(x))).unwrap();
        assert_eq!(t.degrees(), vec![2, 1, 1]);
        for x in [[11, -5, 7], [0, 0, 0], [-3, 9, 2]] {
            assert_eq!(t.eval(&x), rat(p(&x)));
        }
    }

    #[test]
    fn half_integer_closed_form() {
        let axes = vec![(2..=6).collect(), (0..=2).collect()];
        let r = compare_on_grid(
            axes,
            |x| Ok(x[0] * (x[0] + 1) * x[1] / 2),
            |x| frac(x[0] * (x[0] + 1) * x[1], 2),
            &[vec![10, 5], vec![-1, 3]],
        )
        .unwrap();
        assert!(r.passed());
        assert_eq!(r.engine_degrees, vec![2, 1]);
    }

    #[test]
    fn off_by_one_is_caught() {
        let axes = vec![(2..=8).collect()];
        let r = compare_on_grid(
            axes,
            |x| Ok(if x[0] == 5 { 1 } else { 0 }),
            |_| BigRational::zero(),
            &[vec![9]],
        )
        .unwrap();
        assert!(!r.passed());
    }
}
