//! Structured pass/fail reports produced by the verification suites.

use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub trials: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct CheckReport {
    pub checks: Vec<CheckResult>,
}

impl CheckReport {
    pub fn new() -> Self {
        CheckReport { checks: Vec::new() }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checks.extend(other.checks);
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let status = if c.passed() { "pass" } else { "FAIL" };
            out.push_str(&format!(
                "{status}  {} ({}/{} trials ok)",
                c.name,
                c.trials - c.failures,
                c.trials
            ));
            if let Some(ce) = &c.first_counterexample {
                out.push_str(&format!("  first counterexample: {ce}"));
            }
            if let Some(note) = &c.note {
                out.push_str(&format!("  [{note}]"));
            }
            out.push('\n');
        }
        out
    }
}

/// Records one named check with a closure-supplied list of failing cases.
pub struct Checker {
    report: CheckReport,
}

impl Default for Checker {
    fn default() -> Self {
        Self::new()
    }
}

impl Checker {
    pub fn new() -> Self {
        Checker {
            report: CheckReport::new(),
        }
    }

    pub fn record(&mut self, name: &str, trials: usize, failures: Vec<String>) {
        self.report.checks.push(CheckResult {
            name: name.to_string(),
            trials,
            failures: failures.len(),
            first_counterexample: failures.into_iter().next(),
            note: None,
        });
    }

    pub fn record_with_note(
        &mut self,
        name: &str,
        trials: usize,
        failures: Vec<String>,
        note: String,
    ) {
        self.report.checks.push(CheckResult {
            name: name.to_string(),
            trials,
            failures: failures.len(),
            first_counterexample: failures.into_iter().next(),
            note: Some(note),
        });
    }

    pub fn finish(self) -> CheckReport {
        self.report
    }
}
