use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Named pass/fail checks, in the order they were run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records a check; `failures` lists what went wrong (empty means pass).
    pub fn record(&mut self, name: impl Into<String>, failures: Vec<String>) {
        let passed = failures.is_empty();
        let detail = (!passed).then(|| {
            let shown: Vec<_> = failures.iter().take(5).cloned().collect();
            let mut detail = shown.join("; ");
            if failures.len() > shown.len() {
                detail.push_str(&format!("; … {} more", failures.len() - shown.len()));
            }
            detail
        });
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail,
        });
    }

    pub fn pass(&mut self, name: impl Into<String>) {
        self.record(name, Vec::new());
    }

    pub fn expect(&mut self, name: impl Into<String>, ok: bool, why: impl FnOnce() -> String) {
        let failures = if ok { Vec::new() } else { vec![why()] };
        self.record(name, failures);
    }

    /// Appends `other`'s checks with names prefixed by `prefix.`.
    pub fn extend_prefixed(&mut self, prefix: &str, other: Report) {
        self.checks.extend(other.checks.into_iter().map(|c| Check {
            name: format!("{prefix}.{}", c.name),
            ..c
        }));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for check in &self.checks {
            let mark = if check.passed { "PASS" } else { "FAIL" };
            write!(f, "{mark} {}", check.name)?;
            if let Some(detail) = &check.detail {
                write!(f, ": {detail}")?;
            }
            writeln!(f)?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {failed} failed", self.checks.len())
    }
}
