//! One PASS/FAIL line per acceptance criterion. Exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use critval_core::algebra::BigRational;
use critval_core::period::interp::{compare_on_grid, frac};
use critval_core::period::*;
use critval_core::satake::{admissible_cases, all_fixed_closed_form, prop34_lhs, prop34_rhs, CAction};
use critval_core::weights::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<String, String>;

struct Run {
    code: i32,
    lines: Vec<Value>,
}

fn critval(args: &[&str]) -> Result<Run, String> {
    let o = Command::new(env!("CARGO_BIN_EXE_critval"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let text = String::from_utf8(o.stdout).map_err(|e| e.to_string())?;
    let lines = text
        .lines()
        .map(serde_json::from_str)
        .collect::<Result<Vec<Value>, _>>()
        .map_err(|e| format!("invalid NDJSON: {}", e))?;
    Ok(Run {
        code: o.status.code().unwrap_or(-1),
        lines,
    })
}

fn summary_of(args: &[&str]) -> Result<Value, String> {
    let r = critval(args)?;
    let s = r.lines.last().cloned().ok_or("no output")?;
    if r.code != 0 {
        return Err(format!("exit {}: failures {}", r.code, s["failures"]));
    }
    Ok(s)
}

fn within(start: Instant, budget: Duration) -> Result<(), String> {
    let t = start.elapsed();
    if t > budget {
        return Err(format!("took {:.1}s, budget {}s", t.as_secs_f64(), budget.as_secs()));
    }
    Ok(())
}

fn lemma32_sweep() -> Check {
    let start = Instant::now();
    let s = summary_of(&["--summary", "verify-lemma32", "--max-n", "5"])?;
    within(start, Duration::from_secs(60))?;
    if s["cases"] != 62 || s["passed"] != 62 {
        return Err(format!("{}", s));
    }
    Ok(format!("{} cases", s["cases"]))
}

fn prop34_sweep() -> Check {
    let cases = admissible_cases(6);
    let has = |f: &dyn Fn(&critval_core::satake::InducedDatum) -> bool| cases.iter().any(f);
    let covered = has(&|d| d.n() % 2 == 1)
        && has(&|d| d.n() % 2 == 0)
        && has(&|d| d.l() % 2 == 0)
        && has(&|d| d.l() % 2 == 1 && d.l() > 1)
        && has(&|d| d.c_action() == CAction::InertHalfSwap)
        && has(&|d| d.c_action() == CAction::SplitV)
        && has(&|d| d.c_action() == CAction::InertAllFixed);
    if !covered {
        return Err("case grid misses a branch".into());
    }
    let start = Instant::now();
    let s = summary_of(&["--summary", "verify-prop34", "--max-n", "6"])?;
    within(start, Duration::from_secs(300))?;
    if s["passed"] != cases.len() {
        return Err(format!("{}", s));
    }
    Ok(format!("{} cases", cases.len()))
}

fn all_fixed_closed_form_check() -> Check {
    let mut count = 0;
    for d in admissible_cases(6)
        .into_iter()
        .filter(|d| d.c_action() == CAction::InertAllFixed && d.n() % 2 == 1)
    {
        let want = all_fixed_closed_form(d.m(), d.l()).map_err(|e| e.to_string())?;
        let rhs = prop34_rhs(&d).map_err(|e| e.to_string())?.normalize();
        let lhs = prop34_lhs(&d, 1).map_err(|e| e.to_string())?.normalize();
        if rhs != want || lhs != want {
            return Err(d.label());
        }
        count += 1;
    }
    Ok(format!("{} cases", count))
}

fn engine(goal: Goal) -> impl FnMut(&[i64]) -> Result<i64, PeriodError> {
    move |x: &[i64]| {
        let p = Params {
            n: x[0] as u32,
            d: x[2] as u32,
            m: x[1],
            l: Some(x.get(3).copied().unwrap_or(0)),
            parts: None,
        };
        let t = derive_goal(goal, &p)?;
        if !t.matches() || !t.replay() {
            return Err(PeriodError::Mismatch(format!("{} {:?}", goal, t.params)));
        }
        Ok(t.exponent)
    }
}

fn exponent_engine() -> Check {
    let start = Instant::now();
    let axes = || vec![(2..=8).collect::<Vec<i64>>(), (-2..=3).collect(), (1..=3).collect()];
    let probes = vec![vec![9, 4, 4], vec![11, -3, 5]];
    let cases: Vec<(Goal, fn(i64, i64, i64) -> (i64, i64))> = vec![
        (Goal::AsaiInduced, |n, _, d| (n * (n + 1) * d, 2)),
        (Goal::RsInduced, |n, m, d| ((2 * m + 1) * d * n * (n - 1), 2)),
        (Goal::ArchAsai, |n, _, d| (d * n, 1)),
        (Goal::ArchRs, |n, m, d| (2 * m * d * n * (n - 1) - d * (n - 1) * (n - 2), 2)),
        (Goal::ThmB, |n, _, d| (d * n, 1)),
        (Goal::ThmC, |n, m, d| (2 * m * d * n * (n - 1) - d * n * (n + 1), 2)),
        (Goal::Delta, |n, _, d| (d * n * (n + 1), 2)),
    ];
    let mut points = 0;
    for (goal, f) in cases {
        let r = compare_on_grid(axes(), engine(goal), |x| {
            let (a, b) = f(x[0], x[1], x[2]);
            frac(a, b)
        }, &probes)
        .map_err(|e| e.to_string())?;
        if !r.passed() {
            return Err(format!("{}: {:?}", goal, r));
        }
        points += 7 * 6 * 3;
    }
    let mut ax = axes();
    ax.push((-2..=3).collect());
    let r = compare_on_grid(ax, engine(Goal::ThmE), |x| frac(x[2] * (x[1] - x[3]) * x[0] * (x[0] - 1), 1), &[vec![9, 4, 4, -3]])
        .map_err(|e| e.to_string())?;
    if !r.passed() {
        return Err(format!("ThmE: {:?}", r));
    }
    points += 7 * 6 * 3 * 6;
    for n in 2..=8 {
        for d in 1..=3 {
            for m in [0, 1, 2] {
                let t = derive_arch_asai_with(n, d, m).map_err(|e| e.to_string())?;
                if t.exponent != (d * n) as i64 || !t.matches() {
                    return Err(format!("arch-asai n={} d={} internal m={}", n, d, m));
                }
            }
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!("{} grid points, degrees matched", points))
}

fn residual_cancellation() -> Check {
    let mut count = 0;
    for n in 2..=8 {
        for d in 1..=3 {
            for m in -2..=3 {
                let t = derive_arch_rs(n, m, d).map_err(|e| e.to_string())?;
                let (_, c) = derive_main_theorems(Goal::ThmC, n, d, m, None).map_err(|e| e.to_string())?;
                let ok = t.residual.only_cm().is_one()
                    && t.solves.iter().all(|s| s.segment.end.only_cm().is_one())
                    && c.solves.iter().all(|s| s.residual.only_cm().is_one())
                    && c.residual.only_cm().is_one();
                if !ok {
                    return Err(format!("n={} d={} m={}", n, d, m));
                }
                count += 2;
            }
        }
    }
    Ok(format!("{} derivations", count))
}

fn cycle_descents() -> Check {
    let mut count = 0;
    for n in 1..=7 {
        for c in all_cycles(n) {
            for i in 1..=n {
                if count_descents(&c, i).map_err(|e| e.to_string())? != i - 1 {
                    return Err(format!("n={} i={}", n, i));
                }
            }
            count += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for n in 8..=12u32 {
        for _ in 0..1000 {
            let mut order: Vec<u32> = (1..=n).collect();
            order.shuffle(&mut rng);
            let c = CycleDatum::from_order(&order).map_err(|e| e.to_string())?;
            for i in 1..=n {
                if count_descents(&c, i).map_err(|e| e.to_string())? != i - 1 {
                    return Err(format!("sampled n={} i={}", n, i));
                }
            }
            count += 1;
        }
    }
    Ok(format!("{} cycles", count))
}

fn zero() -> BigRational {
    q(0, 1)
}

fn q(n: i64, d: i64) -> BigRational {
    format!("{}/{}", n, d).parse().unwrap()
}

fn weight_pair(rng: &mut ChaCha8Rng) -> (HighestWeight, HighestWeight) {
    let n = rng.gen_range(2..=6usize);
    let d = rng.gen_range(1..=3);
    let tie = rng.gen_bool(0.5);
    let (mut iota, mut iota_p) = (Vec::new(), Vec::new());
    for _ in 0..d {
        let mut mu: Vec<i64> = (0..n).map(|_| rng.gen_range(-6..=6)).collect();
        mu.sort_unstable_by(|a, b| b.cmp(a));
        let p: Vec<i64> = if tie {
            let mut p = vec![0; n - 1];
            for k in 0..n - 1 {
                p[n - 2 - k] = -rng.gen_range(mu[k + 1]..=mu[k]);
            }
            p
        } else {
            let mut p: Vec<i64> = (0..n - 1).map(|_| rng.gen_range(-6..=6)).collect();
            p.sort_unstable_by(|a, b| b.cmp(a));
            p
        };
        iota.push(mu);
        iota_p.push(p);
    }
    (
        HighestWeight::conjugate_self_dual(iota).unwrap(),
        HighestWeight::conjugate_self_dual(iota_p).unwrap(),
    )
}

fn self_dual_type(rng: &mut ChaCha8Rng, n: usize, d: usize) -> InfinityType {
    let doubled = (0..d)
        .map(|_| {
            let mut pos: BTreeSet<i64> = BTreeSet::new();
            while pos.len() < n / 2 {
                pos.insert(2 * rng.gen_range(1..=12) - n.is_multiple_of(2) as i64);
            }
            let mut v: Vec<i64> = pos.iter().flat_map(|&x| [x, -x]).collect();
            if n % 2 == 1 {
                v.push(0);
            }
            v
        })
        .collect();
    InfinityType::from_doubled(doubled, zero())
}

fn critical_sets() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc817);
    let (mut piano, mut half) = (0, 0);
    for k in 0..10_000 {
        let (mu, mu_p) = weight_pair(&mut rng);
        let (a, b) = (infinity_type(&mu, &zero()), infinity_type(&mu_p, &zero()));
        if no_middle_class(&a, &b, &zero(), &zero()) {
            let c = crit_rankin_selberg(&a, &b, &zero(), &zero()).map_err(|e| e.to_string())?;
            if !c.contains(&q(1, 2)) {
                return Err(format!("1/2 not critical for {:?} {:?}", mu, mu_p));
            }
            half += 1;
        }
        if piano_check(&mu, &mu_p).map_err(|e| e.to_string())? {
            piano += 1;
            if !no_middle_class(&a, &b, &zero(), &zero()) {
                return Err(format!("piano without no-middle-class: {:?} {:?}", mu, mu_p));
            }
        }
        let mut perm: Vec<usize> = (0..mu.d()).collect();
        perm.shuffle(&mut rng);
        let r = q(k % 5 - 2, 2);
        let (ar, br) = (infinity_type(&mu, &r), infinity_type(&mu_p, &r));
        if crit_rankin_selberg(&ar, &br, &r, &r)
            != crit_rankin_selberg(&ar.permute_embeddings(&perm), &br.permute_embeddings(&perm), &r, &r)
        {
            return Err("Rankin-Selberg set moved under permutation".into());
        }
        let t = self_dual_type(&mut rng, mu.n(), mu.d());
        for sign in [AsaiSign::Same, AsaiSign::Opposite] {
            if crit_asai(&t, sign) != crit_asai(&t.permute_embeddings(&perm), sign) {
                return Err("Asai set moved under permutation".into());
            }
        }
    }
    let mut asai = 0;
    for n in 2..=6 {
        for _ in 0..200 {
            let d = rng.gen_range(1..=3);
            let t = self_dual_type(&mut rng, n, d);
            let same = crit_asai(&t, AsaiSign::Same).map_err(|e| e.to_string())?;
            let opp = crit_asai(&t, AsaiSign::Opposite).map_err(|e| e.to_string())?;
            for x in [q(0, 1), q(1, 1)] {
                if !same.contains(&x) || opp.contains(&x) {
                    return Err(format!("Asai {{0,1}} property fails for {:?}", t.doubled()));
                }
            }
            asai += 1;
        }
    }
    Ok(format!("10000 pairs ({} piano, {} with 1/2 checked), {} Asai types", piano, half, asai))
}

fn gauss_numerics() -> Check {
    let start = Instant::now();
    let norm = summary_of(&["--summary", "gauss", "norm", "--max-n", "50"])?;
    let quad = summary_of(&["--summary", "gauss", "quadratic"])?;
    let cls = summary_of(&["--summary", "gauss", "classnumber"])?;
    within(start, Duration::from_secs(30))?;
    Ok(format!(
        "{} character checks, {} discriminants, {} class numbers",
        norm["cases"], quad["cases"], cls["cases"]
    ))
}

fn strip(lines: Vec<Value>) -> Vec<Value> {
    lines
        .into_iter()
        .map(|mut v| {
            if let Some(m) = v.as_object_mut() {
                m.remove("elapsed_ms");
            }
            v
        })
        .collect()
}

fn determinism() -> Check {
    let sweeps: [&[&str]; 4] = [
        &["verify-lemma32", "--max-n", "4"],
        &["verify-prop34", "--max-n", "4"],
        &["gauss", "quadratic"],
        &["derive", "ThmA", "--n", "5", "--m", "-1", "--d", "3"],
    ];
    for args in sweeps {
        let mut outs = Vec::new();
        for jobs in ["1", "3"] {
            let mut a = vec!["--jobs", jobs];
            a.extend(args);
            let r = critval(&a)?;
            if r.code != 0 {
                return Err(format!("{:?} exited {}", args, r.code));
            }
            outs.push(strip(r.lines));
        }
        if outs[0] != outs[1] {
            return Err(format!("{:?} differs between runs", args));
        }
    }
    Ok(format!("{} sweeps", sweeps.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("Isobaric Asai sweep: all compositions of n ≤ 5, split and inert", lemma32_sweep),
        ("Induced Asai sweep: all admissible (n, m, l, action) with n ≤ 6", prop34_sweep),
        ("InertAllFixed odd n matches the closed form for n ≤ 6", all_fixed_closed_form_check),
        ("Exponent engine: closed forms on the grid and as interpolating polynomials", exponent_engine),
        ("Residual cancellation in arch-rs and ThmC over the grid", residual_cancellation),
        ("Cycle combinatorics: descents exhaustive n ≤ 7, sampled 8 ≤ n ≤ 12", cycle_descents),
        ("Critical sets: 1/2, Asai {0,1}, piano ⇒ no middle class, permutation invariance", critical_sets),
        ("Gauss-sum numerics: norms, quadratic Gauss sums, class number formula", gauss_numerics),
        ("Determinism: repeated sweeps agree modulo timing", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let r = check();
        let secs = start.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("PASS  {}  [{}; {:.1}s]", name, detail, secs),
            Err(why) => {
                failed += 1;
                println!("FAIL  {}  [{}; {:.1}s]", name, why, secs);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
