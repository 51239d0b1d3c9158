use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    /// Minimal failing instance, `null` when the check passes.
    #[serde(skip_serializing_if = "Value::is_null")]
    pub witness: Value,
}

/// Outcome of one command. With `--canonical` the timing block is dropped
/// and the output is byte-identical for identical inputs.
#[derive(Debug, Default, Serialize)]
pub struct RunReport {
    pub command: String,
    /// role → sha256 of the file contents.
    pub inputs: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub counterexamples: Vec<Value>,
    pub skipped_by_truncation: Vec<String>,
    pub data: BTreeMap<String, Value>,
    pub pass: bool,
    pub timing_ms: BTreeMap<String, f64>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunReport {
    pub fn new(command: &str) -> RunReport {
        RunReport { command: command.into(), pass: true, ..Default::default() }
    }

    pub fn input(&mut self, role: &str, bytes: &[u8]) {
        self.inputs.insert(role.into(), sha256_hex(bytes));
    }

    pub fn check(&mut self, name: &str, pass: bool, witness: impl Serialize) -> bool {
        let witness = if pass { Value::Null } else { serde_json::to_value(witness).unwrap_or(Value::Null) };
        if !pass {
            self.counterexamples.push(serde_json::json!({ "check": name, "witness": witness.clone() }));
        }
        self.pass &= pass;
        self.checks.push(Check { name: name.into(), pass, witness });
        pass
    }

    pub fn data(&mut self, key: &str, v: impl Serialize) {
        self.data.insert(key.into(), serde_json::to_value(v).unwrap_or(Value::Null));
    }

    pub fn skipped(&mut self, labels: impl IntoIterator<Item = String>) {
        self.skipped_by_truncation.extend(labels);
        self.skipped_by_truncation.sort();
        self.skipped_by_truncation.dedup();
    }

    /// Runs one stage and records its wall time.
    pub fn stage<T>(&mut self, name: &str, f: impl FnOnce(&mut RunReport) -> T) -> T {
        let t = Instant::now();
        let out = f(self);
        self.timing_ms.insert(name.into(), t.elapsed().as_secs_f64() * 1e3);
        out
    }

    /// JSON with sorted keys; `serde_json::Value` maps are ordered.
    pub fn render(&self, canonical: bool) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if canonical {
            v.as_object_mut().expect("object").remove("timing_ms");
        }
        serde_json::to_string_pretty(&v).expect("report serializes") + "\n"
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(if c.pass { "PASS " } else { "FAIL " });
            s.push_str(&c.name);
            if !c.pass && !c.witness.is_null() {
                let w = c.witness.to_string();
                let w: String = w.chars().take(160).collect();
                s.push_str(&format!("  witness: {w}"));
            }
            s.push('\n');
        }
        s.push_str(&format!("{}: {}\n", self.command, if self.pass { "ok" } else { "FAILED" }));
        s
    }
}

/// Serializes anything with sorted keys and a trailing newline.
pub fn canonical_json(v: &impl Serialize) -> String {
    let v = serde_json::to_value(v).expect("serializes");
    serde_json::to_string_pretty(&v).expect("serializes") + "\n"
}
