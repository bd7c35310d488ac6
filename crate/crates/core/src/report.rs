//! Machine-readable reports for verification campaigns.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// One structured check record: inputs, expected value, observed value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub expected: String,
    pub got: String,
    pub inputs: String,
    pub name: String,
    pub ok: bool,
}

/// Outcome of one verification campaign. A failing report always carries at
/// least one failing check record, which is enough to replay the check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<CheckRecord>,
    pub claim: String,
    pub ms: u128,
    pub seed: u64,
    pub status: Status,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Accumulates check records and settles into a report.
pub struct ReportBuilder {
    claim: String,
    seed: u64,
    checks: Vec<CheckRecord>,
    start: std::time::Instant,
    /// Cap on recorded passing checks so reports stay readable; failing
    /// checks are always recorded.
    pass_cap: usize,
    passes_seen: usize,
}

impl ReportBuilder {
    pub fn new(claim: &str, seed: u64) -> Self {
        ReportBuilder {
            claim: claim.to_string(),
            seed,
            checks: Vec::new(),
            start: std::time::Instant::now(),
            pass_cap: 64,
            passes_seen: 0,
        }
    }

    pub fn check(&mut self, name: &str, inputs: String, expected: String, got: String) -> bool {
        let ok = expected == got;
        if ok {
            self.passes_seen += 1;
        }
        if !ok || self.passes_seen <= self.pass_cap {
            self.checks.push(CheckRecord {
                expected,
                got,
                inputs,
                name: name.to_string(),
                ok,
            });
        }
        ok
    }

    pub fn check_bool(&mut self, name: &str, inputs: String, condition: bool) -> bool {
        self.check(name, inputs, "true".into(), condition.to_string())
    }

    pub fn note(&mut self, name: &str, inputs: String, value: String) {
        // informational record, always counted as passing
        self.checks.push(CheckRecord {
            expected: value.clone(),
            got: value,
            inputs,
            name: name.to_string(),
            ok: true,
        });
    }

    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn finish(self) -> Report {
        let status = if self.all_ok() {
            Status::Pass
        } else {
            Status::Fail
        };
        Report {
            checks: self.checks,
            claim: self.claim,
            ms: self.start.elapsed().as_millis(),
            seed: self.seed,
            status,
        }
    }
}
