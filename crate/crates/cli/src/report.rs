use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// One document per invocation.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub input: String,
    pub data: serde_json::Map<String, Value>,
    pub checks: Vec<Check>,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &str, input: impl Into<String>) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            tool: "g2t",
            version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            input: input.into(),
            data: serde_json::Map::new(),
            checks: Vec::new(),
            passed: true,
            error: None,
            elapsed_ms: None,
        }
    }

    pub fn put(&mut self, key: &str, value: impl Into<Value>) {
        self.data.insert(key.into(), value.into());
    }

    pub fn check(&mut self, name: impl Into<String>, passed: bool, detail: Option<String>) {
        self.passed &= passed;
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail,
        });
    }

    pub fn fail(&mut self, error: String) {
        self.passed = false;
        self.error = Some(error);
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.command, self.input);
        for (k, v) in &self.data {
            let line = match v {
                Value::String(s) => s.clone(),
                Value::Array(items) if items.iter().all(Value::is_string) => items
                    .iter()
                    .filter_map(Value::as_str)
                    .collect::<Vec<_>>()
                    .join(", "),
                // nested documents only appear in the structured rendering
                Value::Array(_) | Value::Object(_) => continue,
                other => other.to_string(),
            };
            let _ = writeln!(out, "  {k}: {line}");
        }
        for c in &self.checks {
            let mark = if c.passed { "PASS" } else { "FAIL" };
            match &c.detail {
                Some(d) => {
                    let _ = writeln!(out, "{mark} {}: {d}", c.name);
                }
                None => {
                    let _ = writeln!(out, "{mark} {}", c.name);
                }
            }
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error: {e}");
        }
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "elapsed: {ms} ms");
        }
        let _ = writeln!(out, "result: {}", if self.passed { "PASS" } else { "FAIL" });
        out
    }

    pub fn render_structured(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
