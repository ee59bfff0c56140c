//! Weight files and the `crit` report.

use serde::Deserialize;
use serde_json::{json, Value};

use critval_core::algebra::BigRational;
use critval_core::weights::*;

use crate::UsageError;

const MAX_WEIGHT: i64 = 1_000_000_000;
const MAX_POINTS: usize = 2000;

#[derive(Deserialize, Debug)]
#[serde(untagged)]
enum Rat {
    Int(i64),
    Str(String),
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
struct Partner {
    mu: Vec<Vec<i64>>,
    #[serde(default)]
    mu_bar: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    s: Option<Rat>,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct WeightFile {
    n: usize,
    d: usize,
    mu: Vec<Vec<i64>>,
    #[serde(default)]
    r: Option<Rat>,
    #[serde(default)]
    mu_bar: Option<Vec<Vec<i64>>>,
    #[serde(default)]
    prime: Option<Partner>,
}

fn rational(field: &str, r: &Option<Rat>) -> Result<BigRational, UsageError> {
    let s = match r {
        None => "0".to_string(),
        Some(Rat::Int(k)) => k.to_string(),
        Some(Rat::Str(s)) => s.trim().to_string(),
    };
    let q: BigRational = s
        .parse()
        .map_err(|_| UsageError(format!("{}: \"{}\" is not a rational p/q", field, s)))?;
    Ok(q)
}

/// Parses a weight file, reporting the offending line on failure.
pub fn parse(text: &str) -> Result<WeightFile, UsageError> {
    serde_json::from_str(text).map_err(|e| {
        let line = e.line();
        let src = text.lines().nth(line.saturating_sub(1)).unwrap_or("").trim_end();
        UsageError(format!("weight file: {}\n  {} | {}", e, line, src))
    })
}

fn weight(n: usize, field: &str, mu: &[Vec<i64>], bar: &Option<Vec<Vec<i64>>>, d: usize) -> Result<HighestWeight, UsageError> {
    if mu.len() != d {
        return Err(UsageError(format!("{}: expected {} embeddings, got {}", field, d, mu.len())));
    }
    let all = mu.iter().chain(bar.iter().flatten());
    for v in all {
        if v.len() != n {
            return Err(UsageError(format!("{}: expected weight vectors of length {}", field, n)));
        }
        if v.iter().any(|x| x.abs() > MAX_WEIGHT) {
            return Err(UsageError(format!("{}: entries must not exceed {} in size", field, MAX_WEIGHT)));
        }
    }
    let w = match bar {
        None => HighestWeight::conjugate_self_dual(mu.to_vec()),
        Some(b) => {
            if b.len() != d {
                return Err(UsageError(format!("{}_bar: expected {} embeddings", field, d)));
            }
            HighestWeight::new(mu.iter().cloned().zip(b.iter().cloned()).collect())
        }
    };
    w.map_err(|e| UsageError(format!("{}: {}", field, e)))
}

fn type_json(a: &InfinityType) -> Value {
    let rows: Vec<Vec<String>> = (0..a.embeddings())
        .map(|v| a.exponents(v).iter().map(fmt_rational).collect())
        .collect();
    json!(rows)
}

fn set_json(c: Result<CriticalSet, WeightError>) -> Value {
    match c {
        Err(e) => json!({ "error": e.to_string() }),
        Ok(c) => {
            let width = &c.hi_inclusive - &c.lo_exclusive;
            let points = if width <= BigRational::from_integer((MAX_POINTS as i64).into()) {
                json!(c.enumerate().iter().map(fmt_rational).collect::<Vec<_>>())
            } else {
                Value::Null
            };
            json!({
                "window": [fmt_rational(&c.lo_exclusive), fmt_rational(&c.hi_inclusive)],
                "points": points,
            })
        }
    }
}

pub fn report(case: &str, w: &WeightFile) -> Result<Value, UsageError> {
    if w.n == 0 || w.d == 0 {
        return Err(UsageError("n and d must be positive".into()));
    }
    let r = rational("r", &w.r)?;
    let mu = weight(w.n, "mu", &w.mu, &w.mu_bar, w.d)?;
    let a = infinity_type(&mu, &r);
    let mut out = json!({
        "case": case,
        "n": w.n,
        "d": w.d,
        "r": fmt_rational(&r),
        "infinity_type": type_json(&a),
        "regular": a.is_regular(),
        "conjugate_self_dual": a.is_conjugate_self_dual(),
        "sufficiently_regular": sufficiently_regular(&mu),
        "bottom_degree": bottom_degree(w.n as u64, w.d as u64),
        "asai": {
            "same": set_json(crit_asai(&a, AsaiSign::Same)),
            "opposite": set_json(crit_asai(&a, AsaiSign::Opposite)),
        },
    });
    if let Some(p) = &w.prime {
        if w.n < 2 {
            return Err(UsageError("a partner needs n ≥ 2".into()));
        }
        let s = rational("prime.s", &p.s)?;
        let mu_p = weight(w.n - 1, "prime.mu", &p.mu, &p.mu_bar, w.d)?;
        let b = infinity_type(&mu_p, &s);
        let piano = piano_check(&mu, &mu_p).map_err(|e| UsageError(e.to_string()))?;
        out["rankin_selberg"] = json!({
            "s": fmt_rational(&s),
            "infinity_type": type_json(&b),
            "no_middle_class": no_middle_class(&a, &b, &r, &s),
            "crit": set_json(crit_rankin_selberg(&a, &b, &r, &s)),
            "piano": piano,
        });
    }
    Ok(out)
}
