//! Check reports in text and JSON. Checks are sorted by name so output does
//! not depend on evaluation order.

use serde::Serialize;

/// Whether the request `r` selects the check `name`: a full name, a name
/// prefix or one `/`-separated segment.
pub fn matches(r: &str, name: &str) -> bool {
    name.starts_with(r) || name.split('/').any(|seg| seg == r)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub details: String,
    /// What the check establishes, in words.
    pub paper_ref: &'static str,
}

#[derive(Debug, Clone, Serialize)]
struct JsonCheck<'a> {
    #[serde(rename = "check-name")]
    name: &'a str,
    status: &'static str,
    details: &'a str,
    #[serde(rename = "paper-ref")]
    paper_ref: &'a str,
}

#[derive(Debug, Clone, Serialize)]
struct JsonReport<'a> {
    command: &'a str,
    subject: &'a str,
    seed: u64,
    passed: bool,
    checks: Vec<JsonCheck<'a>>,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub subject: String,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(command: &str, subject: &str, seed: u64, mut checks: Vec<CheckResult>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        Self {
            command: command.into(),
            subject: subject.into(),
            seed,
            checks,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// Keeps the checks named by `requested`, each entry matching a full name,
    /// a name prefix or one `/`-separated segment. Returns the entries that
    /// match nothing.
    pub fn restrict(&mut self, requested: &[String]) -> Vec<String> {
        if requested.is_empty() {
            return Vec::new();
        }
        let unmatched = requested
            .iter()
            .filter(|r| !self.checks.iter().any(|c| matches(r, &c.name)))
            .cloned()
            .collect();
        self.checks.retain(|c| requested.iter().any(|r| matches(r, &c.name)));
        unmatched
    }

    pub fn to_json(&self) -> String {
        let report = JsonReport {
            command: &self.command,
            subject: &self.subject,
            seed: self.seed,
            passed: self.passed(),
            checks: self
                .checks
                .iter()
                .map(|c| JsonCheck {
                    name: &c.name,
                    status: if c.passed { "pass" } else { "fail" },
                    details: &c.details,
                    paper_ref: c.paper_ref,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&report).expect("plain data serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {} (seed {})\n", self.command, self.subject, self.seed);
        for c in &self.checks {
            let status = if c.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{status} {}: {}\n", c.name, c.details));
        }
        let passed = self.checks.iter().filter(|c| c.passed).count();
        out.push_str(&format!("{} checks, {passed} passed\n", self.checks.len()));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(name: &str, passed: bool) -> CheckResult {
        CheckResult {
            name: name.into(),
            passed,
            details: String::new(),
            paper_ref: "",
        }
    }

    #[test]
    fn sorted_and_filtered() {
        let mut r = Report::new(
            "verify",
            "x",
            1,
            vec![check("b/fixed-space", true), check("a", false), check("level-0/degree", true)],
        );
        assert_eq!(r.checks[0].name, "a");
        assert!(!r.passed());
        let missing = r.restrict(&["fixed-space".into(), "level-".into(), "nothing".into()]);
        assert_eq!(missing, vec!["nothing".to_string()]);
        assert_eq!(r.checks.len(), 2);
        assert!(r.passed());
        assert!(r.to_json().contains("\"check-name\": \"b/fixed-space\""));
    }
}
