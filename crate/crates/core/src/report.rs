//! Machine-readable check reports with deterministic ordering.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Finding {
    pub check: String,
    pub instance: String,
    pub verdict: Verdict,
    pub detail: String,
}

/// A list of findings. Passing instances are aggregated into one count per
/// check; failures and informational entries are kept individually.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    findings: Vec<Finding>,
    passes: BTreeMap<String, usize>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, check: &str) {
        *self.passes.entry(check.to_string()).or_default() += 1;
    }

    pub fn fail(&mut self, check: &str, instance: impl Into<String>, detail: impl Into<String>) {
        self.passes.entry(check.to_string()).or_default();
        self.findings.push(Finding {
            check: check.to_string(),
            instance: instance.into(),
            verdict: Verdict::Fail,
            detail: detail.into(),
        });
    }

    pub fn info(&mut self, check: &str, instance: impl Into<String>, detail: impl Into<String>) {
        self.findings.push(Finding {
            check: check.to_string(),
            instance: instance.into(),
            verdict: Verdict::Info,
            detail: detail.into(),
        });
    }

    /// Record a pass or a failure depending on `ok`.
    pub fn check(&mut self, check: &str, ok: bool, instance: impl Into<String>, detail: impl Into<String>) {
        if ok {
            self.pass(check);
        } else {
            self.fail(check, instance, detail);
        }
    }

    pub fn merge(&mut self, other: Report) {
        self.findings.extend(other.findings);
        for (k, v) in other.passes {
            *self.passes.entry(k).or_default() += v;
        }
    }

    /// Merge with every check id prefixed, so `R1` becomes `quotient/R1`.
    pub fn merge_prefixed(&mut self, prefix: &str, other: Report) {
        for mut f in other.findings {
            f.check = format!("{prefix}/{}", f.check);
            self.findings.push(f);
        }
        for (k, v) in other.passes {
            *self.passes.entry(format!("{prefix}/{k}")).or_default() += v;
        }
    }

    pub fn ok(&self) -> bool {
        self.findings.iter().all(|f| f.verdict != Verdict::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.verdict == Verdict::Fail)
    }

    pub fn failed(&self, check: &str) -> bool {
        self.failures().any(|f| f.check == check)
    }

    pub fn findings(&self) -> &[Finding] {
        &self.findings
    }

    pub fn pass_count(&self, check: &str) -> usize {
        self.passes.get(check).copied().unwrap_or(0)
    }

    pub fn checks(&self) -> impl Iterator<Item = &str> {
        self.passes.keys().map(String::as_str)
    }

    /// Findings sorted by (check, instance); the canonical order for output.
    pub fn sorted(mut self) -> Self {
        self.findings.sort();
        self.findings.dedup();
        self
    }

    pub fn to_json(&self) -> serde_json::Value {
        let sorted = self.clone().sorted();
        let checks: Vec<serde_json::Value> = sorted
            .passes
            .iter()
            .map(|(k, &v)| {
                let fails = sorted.findings.iter().filter(|f| &f.check == k && f.verdict == Verdict::Fail).count();
                serde_json::json!({ "check": k, "passed": v, "failed": fails })
            })
            .collect();
        serde_json::json!({
            "ok": sorted.ok(),
            "checks": checks,
            "findings": sorted.findings,
        })
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sorted = self.clone().sorted();
        for (k, v) in &sorted.passes {
            let fails = sorted.findings.iter().filter(|x| &x.check == k && x.verdict == Verdict::Fail).count();
            let mark = if fails == 0 { "PASS" } else { "FAIL" };
            writeln!(f, "{mark} {k}: {v} passed, {fails} failed")?;
        }
        for x in &sorted.findings {
            let tag = match x.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
                Verdict::Info => "info",
            };
            writeln!(f, "  [{tag}] {} {}: {}", x.check, x.instance, x.detail)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_deterministic() {
        let mut a = Report::new();
        a.fail("b", "2", "x");
        a.fail("a", "1", "y");
        a.pass("c");
        let mut b = Report::new();
        b.pass("c");
        b.fail("a", "1", "y");
        b.fail("b", "2", "x");
        assert_eq!(a.to_json().to_string(), b.to_json().to_string());
        assert!(!a.ok());
        assert!(a.failed("a"));
    }
}
