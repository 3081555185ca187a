use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

/// Knobs shared by the randomized suites.
#[derive(Clone, Copy, Debug)]
#[derive(Default)]
pub struct Config {
    pub seed: u64,
    /// Overrides each suite's default instance count.
    pub cases: Option<usize>,
}


impl Config {
    pub fn cases_or(&self, default: usize) -> usize {
        self.cases.unwrap_or(default)
    }
}

/// Outcome of one acceptance criterion.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub id: u8,
    pub title: &'static str,
    pub instances: usize,
    pub checks: usize,
    pub failed: usize,
    /// The first few failures, for diagnosis.
    pub examples: Vec<String>,
    /// Observations that are not failures.
    pub notes: Vec<String>,
    pub elapsed_ms: u128,
    pub budget_ms: Option<u128>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failed == 0 && self.budget_ms.is_none_or(|b| self.elapsed_ms < b)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "criterion {} {verdict}: {} ({} instances, {}/{} checks passed, {} ms",
            self.id,
            self.title,
            self.instances,
            self.checks - self.failed,
            self.checks,
            self.elapsed_ms
        )?;
        if let Some(b) = self.budget_ms {
            write!(f, " of {b} ms")?;
        }
        f.write_str(")")
    }
}

const KEEP_EXAMPLES: usize = 5;

/// Accumulates checks for one report.
pub(crate) struct Tally {
    id: u8,
    title: &'static str,
    budget: Option<Duration>,
    start: Instant,
    pub instances: usize,
    checks: usize,
    failed: usize,
    examples: Vec<String>,
    pub notes: Vec<String>,
}

impl Tally {
    pub fn new(id: u8, title: &'static str, budget: Option<Duration>) -> Self {
        Tally { id, title, budget, start: Instant::now(), instances: 0, checks: 0, failed: 0, examples: Vec::new(), notes: Vec::new() }
    }

    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.examples.len() < KEEP_EXAMPLES {
                self.examples.push(what());
            }
        }
    }

    pub fn finish(self) -> Report {
        Report {
            id: self.id,
            title: self.title,
            instances: self.instances,
            checks: self.checks,
            failed: self.failed,
            examples: self.examples,
            notes: self.notes,
            elapsed_ms: self.start.elapsed().as_millis(),
            budget_ms: self.budget.map(|b| b.as_millis()),
        }
    }
}
