//! Ordered NDJSON emission of case reports computed on a worker pool.

use std::collections::BTreeMap;
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::mpsc;
use std::time::Instant;

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::UsageError;

pub struct Outcome {
    pub case: String,
    pub pass: bool,
    pub value: Value,
}

impl Outcome {
    pub fn report<T: serde::Serialize>(case: String, pass: bool, report: &T) -> Outcome {
        let value = serde_json::to_value(report).unwrap_or_else(|e| json!({ "case": case, "error": e.to_string() }));
        Outcome { case, pass, value }
    }

    pub fn error(case: String, msg: impl std::fmt::Display) -> Outcome {
        let value = json!({ "case": case, "error": msg.to_string() });
        Outcome {
            case,
            pass: false,
            value,
        }
    }
}

pub struct Sink {
    out: Box<dyn Write + Send>,
    summary_only: bool,
    jobs: usize,
}

impl Sink {
    pub fn new(out: Box<dyn Write + Send>, summary_only: bool, jobs: usize) -> Sink {
        Sink {
            out,
            summary_only,
            jobs,
        }
    }

    fn line(&mut self, v: &Value) {
        let _ = writeln!(self.out, "{}", v);
        let _ = self.out.flush();
    }

    /// Runs `f` over `cases` and writes one line per case in input order,
    /// then the summary. Returns the exit code.
    pub fn run<T, F>(&mut self, command: &str, cases: &[T], f: F) -> Result<i32, UsageError>
    where
        T: Sync,
        F: Fn(&T) -> Outcome + Sync,
    {
        let start = Instant::now();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| UsageError(format!("cannot start worker pool: {}", e)))?;
        let (tx, rx) = mpsc::channel::<(usize, Outcome)>();
        let (mut passed, mut failures) = (0usize, Vec::new());
        std::thread::scope(|s| {
            let (pool, f) = (&pool, &f);
            s.spawn(move || {
                pool.install(|| {
                    cases.par_iter().enumerate().for_each_with(tx, |tx, (i, c)| {
                        let o = catch_unwind(AssertUnwindSafe(|| f(c)))
                            .unwrap_or_else(|_| Outcome::error(format!("case {}", i), "internal error"));
                        let _ = tx.send((i, o));
                    })
                })
            });
            let mut pending = BTreeMap::new();
            let mut next = 0;
            for (i, o) in rx {
                pending.insert(i, o);
                while let Some(o) = pending.remove(&next) {
                    if o.pass {
                        passed += 1;
                    } else {
                        failures.push(o.case.clone());
                    }
                    if !self.summary_only {
                        self.line(&o.value);
                    }
                    next += 1;
                }
            }
        });
        let summary = json!({
            "summary": true,
            "command": command,
            "cases": cases.len(),
            "passed": passed,
            "failed": failures.len(),
            "failures": failures,
            "elapsed_ms": start.elapsed().as_secs_f64() * 1e3,
        });
        self.line(&summary);
        Ok(if failures.is_empty() { 0 } else { 1 })
    }
}
