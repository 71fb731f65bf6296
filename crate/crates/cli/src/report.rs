//! The report every subcommand prints: echoed inputs, results with units and
//! any Clausius verdicts. Text by default, one JSON document with `--json`.

use std::fmt::Write as _;

use infotherm::{Entropy, Verdict};
use serde::Serialize;
use serde_json::{Map, Value};

/// Bumped on any breaking change to the JSON layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct Quantity {
    pub value: Value,
    pub unit: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictEntry {
    pub name: String,
    pub verdict: Verdict,
    /// In units of k.
    pub margin: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub inputs: Map<String, Value>,
    pub results: Map<String, Value>,
    pub verdicts: Vec<VerdictEntry>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs: Map::new(),
            results: Map::new(),
            verdicts: Vec::new(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>, unit: &str) -> &mut Self {
        let q = Quantity {
            value: value.into(),
            unit: unit.to_string(),
        };
        self.results.insert(
            key.to_string(),
            serde_json::to_value(q).expect("quantity serializes"),
        );
        self
    }

    pub fn verdict(&mut self, name: &str, verdict: Verdict, margin: Entropy) -> &mut Self {
        self.verdicts.push(VerdictEntry {
            name: name.to_string(),
            verdict,
            margin: margin.value(),
        });
        self
    }

    pub fn any_violated(&self) -> bool {
        self.verdicts.iter().any(|v| v.verdict == Verdict::Violated)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        if !self.inputs.is_empty() {
            let _ = writeln!(out, "inputs:");
            for (k, v) in &self.inputs {
                let _ = writeln!(out, "  {k} = {}", plain(v));
            }
        }
        let _ = writeln!(out, "results:");
        for (k, q) in &self.results {
            let value = plain(&q["value"]);
            match q["unit"].as_str() {
                Some(u) if !u.is_empty() => {
                    let _ = writeln!(out, "  {k} = {value} {u}");
                }
                _ => {
                    let _ = writeln!(out, "  {k} = {value}");
                }
            }
        }
        if !self.verdicts.is_empty() {
            let _ = writeln!(out, "verdicts:");
            for v in &self.verdicts {
                let _ = writeln!(
                    out,
                    "  {}: {} (margin {} k)",
                    v.name,
                    v.verdict,
                    Value::from(v.margin)
                );
            }
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_keeps_insertion_order_and_units() {
        let mut r = Report::new("demo");
        r.input("b", 2).input("a", 1);
        r.result("zeta", 1.5, "k").result("alpha", "random", "");
        let json = r.to_json();
        assert!(json.find("\"b\"").unwrap() < json.find("\"a\"").unwrap());
        assert!(json.find("zeta").unwrap() < json.find("alpha").unwrap());
        let v: Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["results"]["zeta"]["unit"], "k");
        assert!(!r.any_violated());
    }

    #[test]
    fn text_lists_verdicts() {
        let mut r = Report::new("demo");
        r.result("x", 3, "nat");
        r.verdict("clausius", Verdict::Violated, Entropy(-5.0));
        assert!(r.any_violated());
        let t = r.to_text();
        assert!(t.contains("x = 3 nat"));
        assert!(t.contains("clausius: violated (margin -5.0 k)"));
    }
}
