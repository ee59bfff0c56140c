//! `critval`: verification sweeps, critical sets, period derivations and
//! Gauss-sum numerics, reported as newline-delimited JSON.

mod crit;
mod output;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use critval_core::gauss::{
    class_number_check, fundamental_discriminants, gauss_conjugate_check, gauss_norm_check,
    is_fundamental, primitive_characters, verify_quadratic_gauss,
};
use critval_core::period::{derive_goal, Goal, Params, PeriodError};
use critval_core::satake::{admissible_cases, verify_lemma32, verify_prop34, PlaceKind};
use critval_core::weights::{compositions, IsobaricShape};

use output::{Outcome, Sink};

/// A configuration or input error; exits with status 2.
#[derive(Debug)]
pub struct UsageError(pub String);

const LEMMA32_MAX_N: u32 = 5;
const PROP34_MAX_N: u32 = 6;
const DERIVE_MAX_N: u32 = 8;
const DERIVE_MAX_D: u32 = 3;
const DERIVE_MAX_M: i64 = 3;
const GAUSS_MAX_DISC: i64 = 200;
const GAUSS_MAX_MODULUS: u32 = 50;
const CLASS_NUMBERS: [(i64, u64, u64); 6] =
    [(-3, 1, 6), (-4, 1, 4), (-7, 1, 2), (-8, 1, 2), (-11, 1, 2), (-23, 3, 2)];

#[derive(Parser, Debug)]
#[command(name = "critval", version, about = "Exact and numeric checks for critical L-values")]
struct Cli {
    /// Write reports to PATH instead of stdout
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Worker threads (default: logical cores)
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Emit a single aggregated object instead of one line per case
    #[arg(long, global = true)]
    summary: bool,
    /// Allow parameters beyond the default limits
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Asai factorization of isobaric sums, all compositions of n ≤ max-n
    VerifyLemma32 {
        #[arg(long = "max-n", default_value_t = LEMMA32_MAX_N)]
        max_n: u32,
    },
    /// Asai L-function of automorphic inductions, all admissible cases with n ≤ max-n
    VerifyProp34 {
        #[arg(long = "max-n", default_value_t = PROP34_MAX_N)]
        max_n: u32,
    },
    /// Critical sets, piano-hypothesis and regularity for a weight file
    Crit { input: PathBuf },
    /// Derive the (2πi)-exponent of a period relation
    Derive {
        goal: String,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1)]
        d: u32,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, allow_negative_numbers = true)]
        l: Option<i64>,
        /// Isobaric block sizes, comma separated
        #[arg(long, value_delimiter = ',')]
        parts: Option<Vec<u32>>,
    },
    /// Gauss sums and the class number formula
    Gauss {
        mode: GaussMode,
        /// Negative fundamental discriminant; all in [-200, -1] when omitted
        #[arg(long, allow_negative_numbers = true)]
        disc: Option<i64>,
        #[arg(long)]
        h: Option<u64>,
        #[arg(long)]
        w: Option<u64>,
        /// Largest modulus for the norm mode
        #[arg(long = "max-n", default_value_t = GAUSS_MAX_MODULUS)]
        max_n: u32,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GaussMode {
    Quadratic,
    Classnumber,
    Norm,
}

fn limit<T: PartialOrd + std::fmt::Display>(force: bool, name: &str, v: T, max: T) -> Result<(), UsageError> {
    if !force && v > max {
        return Err(UsageError(format!(
            "{} = {} exceeds the limit {}; pass --force to run it anyway",
            name, v, max
        )));
    }
    Ok(())
}

fn lemma32(sink: &mut Sink, force: bool, max_n: u32) -> Result<i32, UsageError> {
    if max_n < 2 {
        return Err(UsageError(format!("max-n = {} must be at least 2", max_n)));
    }
    limit(force, "max-n", max_n, LEMMA32_MAX_N)?;
    let mut cases = Vec::new();
    for n in 1..=max_n {
        for parts in compositions(n) {
            for kind in [PlaceKind::Split, PlaceKind::Inert] {
                cases.push((parts.clone(), kind));
            }
        }
    }
    sink.run("verify-lemma32", &cases, |(parts, kind)| {
        let case = format!("lemma32 parts={:?} {}", parts, kind.label());
        let p: Vec<i64> = parts.iter().map(|&x| x as i64).collect();
        match IsobaricShape::new(&p).map_err(Into::into).and_then(|s| verify_lemma32(&s, *kind)) {
            Ok(r) => Outcome::report(r.case.clone(), r.equal, &r),
            Err(e) => Outcome::error(case, e),
        }
    })
}

fn prop34(sink: &mut Sink, force: bool, max_n: u32) -> Result<i32, UsageError> {
    if max_n < 2 {
        return Err(UsageError(format!("max-n = {} must be at least 2", max_n)));
    }
    limit(force, "max-n", max_n, PROP34_MAX_N)?;
    let cases = admissible_cases(max_n);
    sink.run("verify-prop34", &cases, |d| match verify_prop34(d) {
        Ok(r) => Outcome::report(r.case.clone(), r.equal, &r),
        Err(e) => Outcome::error(d.label(), e),
    })
}

fn crit(sink: &mut Sink, input: &PathBuf) -> Result<i32, UsageError> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| UsageError(format!("{}: {}", input.display(), e)))?;
    let w = crit::parse(&text)?;
    let case = format!("crit {}", input.file_name().map_or_else(String::new, |f| f.to_string_lossy().into_owned()));
    let value = crit::report(&case, &w)?;
    let o = Outcome { case, pass: true, value };
    let cell = std::sync::Mutex::new(Some(o));
    sink.run("crit", &[()], |_| cell.lock().unwrap().take().expect("single case"))
}

#[allow(clippy::too_many_arguments)]
fn derive(
    sink: &mut Sink,
    force: bool,
    goal: &str,
    n: u32,
    d: u32,
    m: i64,
    l: Option<i64>,
    parts: Option<Vec<u32>>,
) -> Result<i32, UsageError> {
    let goal: Goal = goal.parse().map_err(|e: PeriodError| UsageError(e.to_string()))?;
    limit(force, "n", n, DERIVE_MAX_N)?;
    limit(force, "d", d, DERIVE_MAX_D)?;
    limit(force, "|m|", m.abs(), DERIVE_MAX_M)?;
    if let Some(l) = l {
        limit(force, "|l|", l.abs(), DERIVE_MAX_M)?;
    }
    let p = Params { n, d, m, l, parts };
    let case = format!("{} n={} d={} m={}{}", goal, n, d, m, l.map_or(String::new(), |l| format!(" l={}", l)));
    let trace = match derive_goal(goal, &p) {
        Ok(t) => t,
        Err(e @ (PeriodError::InvalidParam(_) | PeriodError::NotCritical(_) | PeriodError::Unknown(_))) => {
            return Err(UsageError(e.to_string()))
        }
        Err(e) => {
            let o = Outcome::error(case, e);
            let cell = std::sync::Mutex::new(Some(o));
            return sink.run("derive", &[()], |_| cell.lock().unwrap().take().expect("single case"));
        }
    };
    let replayed = trace.replay();
    let pass = trace.matches() && replayed;
    let mut value = trace.to_json();
    value["case"] = json!(case);
    value["replayed"] = json!(replayed);
    let cell = std::sync::Mutex::new(Some(Outcome { case, pass, value }));
    sink.run("derive", &[()], |_| cell.lock().unwrap().take().expect("single case"))
}

fn check_disc(force: bool, d: i64) -> Result<(), UsageError> {
    if d >= 0 || !is_fundamental(d) {
        return Err(UsageError(format!("{} is not a negative fundamental discriminant", d)));
    }
    limit(force, "|D|", d.abs(), GAUSS_MAX_DISC)
}

fn gauss(
    sink: &mut Sink,
    force: bool,
    mode: GaussMode,
    disc: Option<i64>,
    h: Option<u64>,
    w: Option<u64>,
    max_n: u32,
) -> Result<i32, UsageError> {
    match mode {
        GaussMode::Quadratic => {
            let ds = match disc {
                Some(d) => {
                    check_disc(force, d)?;
                    vec![d]
                }
                None => fundamental_discriminants(-GAUSS_MAX_DISC, -1),
            };
            sink.run("gauss quadratic", &ds, |&d| match verify_quadratic_gauss(d) {
                Ok(r) => Outcome::report(r.case.clone(), r.equal, &r),
                Err(e) => Outcome::error(format!("quadratic D={}", d), e),
            })
        }
        GaussMode::Classnumber => {
            let cases = match (disc, h, w) {
                (Some(d), Some(h), Some(w)) => {
                    check_disc(force, d)?;
                    if h == 0 || w == 0 {
                        return Err(UsageError("h and w must be positive".into()));
                    }
                    vec![(d, h, w)]
                }
                (None, None, None) => CLASS_NUMBERS.to_vec(),
                _ => return Err(UsageError("classnumber needs all of --disc, --h and --w".into())),
            };
            sink.run("gauss classnumber", &cases, |&(d, h, w)| match class_number_check(d, h, w) {
                Ok(r) => Outcome::report(r.case.clone(), r.equal, &r),
                Err(e) => Outcome::error(format!("classnumber D={}", d), e),
            })
        }
        GaussMode::Norm => {
            if max_n == 0 {
                return Err(UsageError("max-n must be positive".into()));
            }
            limit(force, "max-n", max_n, GAUSS_MAX_MODULUS)?;
            let mut chars = Vec::new();
            for n in 1..=max_n {
                chars.extend(primitive_characters(n).map_err(|e| UsageError(e.to_string()))?);
            }
            let cases: Vec<(usize, bool)> = (0..chars.len()).flat_map(|i| [(i, false), (i, true)]).collect();
            sink.run("gauss norm", &cases, |&(i, conj)| {
                let r = if conj {
                    gauss_conjugate_check(&chars[i])
                } else {
                    gauss_norm_check(&chars[i])
                };
                Outcome::report(r.case.clone(), r.equal, &r)
            })
        }
    }
}

fn run(cli: Cli) -> Result<i32, UsageError> {
    let jobs = match cli.jobs {
        Some(0) => return Err(UsageError("--jobs must be at least 1".into())),
        Some(j) => j,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let out: Box<dyn Write + Send> = match &cli.out {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| UsageError(format!("{}: {}", p.display(), e)))?,
        )),
        None => Box::new(std::io::stdout()),
    };
    let mut sink = Sink::new(out, cli.summary, jobs);
    let force = cli.force;
    match cli.command {
        Command::VerifyLemma32 { max_n } => lemma32(&mut sink, force, max_n),
        Command::VerifyProp34 { max_n } => prop34(&mut sink, force, max_n),
        Command::Crit { input } => crit(&mut sink, &input),
        Command::Derive { goal, n, d, m, l, parts } => derive(&mut sink, force, &goal, n, d, m, l, parts),
        Command::Gauss { mode, disc, h, w, max_n } => gauss(&mut sink, force, mode, disc, h, w, max_n),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(UsageError(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}
