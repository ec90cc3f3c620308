use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

/// One named check with its outcome and whatever evidence it produced.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub summary: String,
    pub details: Value,
}

impl CheckResult {
    pub fn new(
        name: impl Into<String>,
        pass: bool,
        summary: impl Into<String>,
        details: impl Serialize,
    ) -> Self {
        CheckResult {
            name: name.into(),
            pass,
            summary: summary.into(),
            details: serde_json::to_value(details).expect("report details serialize"),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub parameters: Value,
    pub seed: u64,
    pub pass: bool,
    pub results: Vec<CheckResult>,
    pub duration_ms: u128,
}

impl Report {
    pub fn new(command: String, parameters: Value, seed: u64, results: Vec<CheckResult>) -> Self {
        Report {
            command,
            parameters,
            seed,
            pass: results.iter().all(|r| r.pass),
            results,
            duration_ms: 0,
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let verdict = if r.pass { "PASS" } else { "FAIL" };
            writeln!(out, "{verdict} {}: {}", r.name, r.summary).unwrap();
        }
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        writeln!(
            out,
            "{verdict} overall ({} checks, seed {}, {} ms)",
            self.results.len(),
            self.seed,
            self.duration_ms
        )
        .unwrap();
        out
    }
}
