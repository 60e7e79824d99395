//! Machine-readable verification reports. The JSON shape is fixed:
//! `{"suite": str, "bound": int, "cases": int,
//!   "failures": [{"law": str, "witness": {var: string}}], "elapsed_ms": int}`.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Failure {
    pub law: String,
    pub witness: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub bound: u64,
    pub cases: u64,
    pub failures: Vec<Failure>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Accumulates cases and failures while a suite runs.
pub struct ReportBuilder {
    suite: String,
    bound: u64,
    pub cases: u64,
    pub failures: Vec<Failure>,
    started: Instant,
}

impl ReportBuilder {
    pub fn new(suite: impl Into<String>, bound: u64) -> Self {
        ReportBuilder {
            suite: suite.into(),
            bound,
            cases: 0,
            failures: Vec::new(),
            started: Instant::now(),
        }
    }

    pub fn case(&mut self, law: &str, ok: bool, witness: impl FnOnce() -> BTreeMap<String, String>) {
        self.cases += 1;
        if !ok {
            self.failures.push(Failure {
                law: law.to_string(),
                witness: witness(),
            });
        }
    }

    /// Record a batch of identically-shaped cases at once.
    pub fn bulk(&mut self, cases: u64, failures: Vec<Failure>) {
        self.cases += cases;
        self.failures.extend(failures);
    }

    pub fn finish(mut self) -> VerificationReport {
        self.failures.sort();
        self.failures.dedup();
        VerificationReport {
            suite: self.suite,
            bound: self.bound,
            cases: self.cases,
            failures: self.failures,
            elapsed_ms: self.started.elapsed().as_millis() as u64,
        }
    }
}

/// Renders a single-variable witness.
pub fn witness1(var: &str, val: impl ToString) -> BTreeMap<String, String> {
    BTreeMap::from([(var.to_string(), val.to_string())])
}

/// Renders a witness from (variable, value) pairs.
pub fn witness(pairs: &[(&str, &dyn ToString)]) -> BTreeMap<String, String> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}
