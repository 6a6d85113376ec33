use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Outcome of one command: a JSON result, human-readable summary lines and
/// the verification transcript.
#[derive(Debug)]
pub struct Report {
    pub command: &'static str,
    pub result: Value,
    pub summary: Vec<String>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            result: Value::Null,
            summary: Vec::new(),
            checks: Vec::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: None,
        });
    }

    pub fn check_with(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: Some(detail.into()),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "passed": self.passed(),
            "result": self.result,
            "verification": self.checks,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{}: {}\n",
            self.command,
            if self.passed() { "PASS" } else { "FAIL" }
        );
        for line in &self.summary {
            out.push_str(line);
            out.push('\n');
        }
        if !self.checks.is_empty() {
            out.push_str("verification:\n");
        }
        for c in &self.checks {
            let mark = if c.passed { "ok" } else { "FAIL" };
            match &c.detail {
                Some(d) => out.push_str(&format!("  [{mark}] {}: {d}\n", c.name)),
                None => out.push_str(&format!("  [{mark}] {}\n", c.name)),
            }
        }
        out
    }
}
