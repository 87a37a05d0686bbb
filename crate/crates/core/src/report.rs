//! Structured results for individual verification checks.

use serde::Serialize;

/// Outcome of one named check on one algebra.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CheckReport {
    /// Algebra the check ran against.
    pub algebra: String,
    /// Name of the check, e.g. `coproduct-homomorphism`.
    pub check: String,
    /// Finer subject within the check (a generator, a generator pair, ...).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subject: Option<String>,
    /// Truncation order the check ran at.
    pub order: u32,
    pub status: Status,
    /// Informational checks report their outcome but never gate a run.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub informational: bool,
    /// Number of residual terms (zero exactly when the check passes).
    pub residual_term_count: usize,
    /// Up to five residual terms in canonical text form.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sample_residual_terms: Vec<String>,
    pub elapsed_ms: u128,
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl CheckReport {
    /// A report from a residual: passing exactly when the residual is empty.
    pub fn from_residual(
        algebra: &str,
        check: &str,
        subject: Option<String>,
        order: u32,
        residual_terms: Vec<String>,
    ) -> Self {
        let status = if residual_terms.is_empty() { Status::Pass } else { Status::Fail };
        CheckReport {
            algebra: algebra.to_string(),
            check: check.to_string(),
            subject,
            order,
            status,
            informational: false,
            residual_term_count: residual_terms.len(),
            sample_residual_terms: residual_terms.into_iter().take(5).collect(),
            elapsed_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Mark the report as informational (never affects the overall verdict).
    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }

    pub fn with_elapsed(mut self, elapsed_ms: u128) -> Self {
        self.elapsed_ms = elapsed_ms;
        self
    }

    /// One-line text rendering.
    pub fn line(&self) -> String {
        let tag = match (self.status, self.informational) {
            (Status::Pass, false) => "PASS",
            (Status::Fail, false) => "FAIL",
            (Status::Pass, true) => "info",
            (Status::Fail, true) => "INFO",
        };
        let subject = match &self.subject {
            Some(s) => format!(" [{s}]"),
            None => String::new(),
        };
        let mut line = format!(
            "[{tag}] {} {}{} (order {}, {} ms)",
            self.algebra, self.check, subject, self.order, self.elapsed_ms
        );
        if self.status == Status::Fail {
            line.push_str(&format!(" residual terms: {}", self.residual_term_count));
            for t in &self.sample_residual_terms {
                line.push_str(&format!("\n        {t}"));
            }
        }
        line
    }
}

/// Aggregated pass/fail counts over a set of reports.  Informational
/// reports are counted separately and never gate a run.
#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub informational: usize,
}

pub fn summarize(reports: &[CheckReport]) -> Summary {
    let mut s = Summary { total: reports.len(), passed: 0, failed: 0, informational: 0 };
    for r in reports {
        if r.informational {
            s.informational += 1;
        } else if r.passed() {
            s.passed += 1;
        } else {
            s.failed += 1;
        }
    }
    s
}

/// Whether every gating check passed.
pub fn all_passed(reports: &[CheckReport]) -> bool {
    reports.iter().all(|r| r.informational || r.passed())
}

/// Canonical report ordering: algebra, check, subject, order.
pub fn sort_reports(reports: &mut [CheckReport]) {
    reports.sort_by(|a, b| {
        a.algebra
            .cmp(&b.algebra)
            .then_with(|| a.check.cmp(&b.check))
            .then_with(|| a.subject.cmp(&b.subject))
            .then_with(|| a.order.cmp(&b.order))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residual_decides_status() {
        let pass = CheckReport::from_residual("a", "c", None, 3, vec![]);
        assert!(pass.passed());
        let fail =
            CheckReport::from_residual("a", "c", None, 3, vec!["(gen K)".into(); 7]);
        assert!(!fail.passed());
        assert_eq!(fail.residual_term_count, 7);
        assert_eq!(fail.sample_residual_terms.len(), 5);
    }

    #[test]
    fn serialization_skips_empty_fields() {
        let r = CheckReport::from_residual("a", "c", None, 2, vec![]);
        let json = serde_json::to_value(&r).unwrap();
        assert!(json.get("subject").is_none());
        assert!(json.get("sample_residual_terms").is_none());
        assert!(json.get("informational").is_none());
        assert_eq!(json["status"], "pass");
    }
}
