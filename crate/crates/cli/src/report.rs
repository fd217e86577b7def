use std::time::Duration;

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Refuted,
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Verified => 0,
            Verdict::Refuted => 1,
            Verdict::Inconclusive => 2,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Verdict::Verified => "verified",
            Verdict::Refuted => "refuted",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Outcome of one command: human lines plus the fields of the JSON report.
pub struct Report {
    pub command: &'static str,
    pub spec: Value,
    pub verdict: Verdict,
    pub result: Value,
    pub witnesses: Vec<Value>,
    pub bounds: Value,
    pub timings: Vec<(&'static str, Duration)>,
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, verdict: Verdict) -> Report {
        Report {
            command,
            spec: Value::Null,
            verdict,
            result: json!({}),
            witnesses: Vec::new(),
            bounds: json!({}),
            timings: Vec::new(),
            lines: Vec::new(),
        }
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    /// `timings` is an empty object under `--no-timings` so the schema
    /// stays fixed.
    pub fn to_json(&self, with_timings: bool) -> Value {
        let mut timings = Map::new();
        if with_timings {
            for (phase, d) in &self.timings {
                timings.insert(format!("{phase}_ms"), json!(d.as_secs_f64() * 1e3));
            }
        }
        json!({
            "command": self.command,
            "spec": self.spec,
            "verdict": self.verdict.name(),
            "result": self.result,
            "witnesses": self.witnesses,
            "bounds": self.bounds,
            "timings": timings,
        })
    }
}
