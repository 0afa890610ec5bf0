//! Deterministic command reports. Keys and theories are sorted, so two runs
//! on the same input print the same bytes unless timing is requested.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Violation,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Violation => 1,
            Status::Error => 2,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Violation => "violation",
            Status::Error => "error",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NodeTheory {
    pub node: String,
    pub language: String,
    pub sentences: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub institution: Option<String>,
    pub bound: Option<usize>,
    pub status: Status,
    pub summary: BTreeMap<String, Value>,
    pub theories: Vec<NodeTheory>,
    pub diagnostics: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            institution: None,
            bound: None,
            status: Status::Ok,
            summary: BTreeMap::new(),
            theories: Vec::new(),
            diagnostics: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn error(command: &str, message: String) -> Self {
        let mut r = Self::new(command);
        r.status = Status::Error;
        r.diagnostics.push(message);
        r
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.to_string(), value.into());
    }

    pub fn theory(&mut self, node: &str, language: String, sentences: impl IntoIterator<Item = String>) {
        let mut sentences: Vec<String> = sentences.into_iter().collect();
        sentences.sort();
        self.theories.push(NodeTheory {
            node: node.to_string(),
            language,
            sentences,
        });
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        if let Some(i) = &self.institution {
            let _ = writeln!(out, "institution: {i}");
        }
        if let Some(b) = self.bound {
            let _ = writeln!(out, "bound: {b}");
        }
        let _ = writeln!(out, "status: {}", self.status.as_str());
        for (k, v) in &self.summary {
            match v {
                Value::String(s) => {
                    let _ = writeln!(out, "{k}: {s}");
                }
                other => {
                    let _ = writeln!(out, "{k}: {other}");
                }
            }
        }
        if !self.theories.is_empty() {
            let _ = writeln!(out, "theories:");
            for t in &self.theories {
                let _ = writeln!(
                    out,
                    "  {} over {} ({} sentences)",
                    t.node,
                    t.language,
                    t.sentences.len()
                );
                for s in &t.sentences {
                    let _ = writeln!(out, "    {s}");
                }
            }
        }
        if !self.diagnostics.is_empty() {
            let _ = writeln!(out, "diagnostics:");
            for d in &self.diagnostics {
                let _ = writeln!(out, "  {d}");
            }
        }
        if let Some(ms) = self.timing_ms {
            let _ = writeln!(out, "timing_ms: {ms}");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_report_sorts_sentences_and_keys() {
        let mut r = Report::new("consequence");
        r.bound = Some(3);
        r.set("zeta", 1);
        r.set("alpha", "x");
        r.theory("n", "{a}".into(), ["b".to_string(), "a".to_string()]);
        let text = r.to_text();
        assert!(text.find("alpha").unwrap() < text.find("zeta").unwrap());
        assert!(text.contains("  n over {a} (2 sentences)\n    a\n    b\n"));
        assert_eq!(r.status.exit_code(), 0);
    }

    #[test]
    fn json_omits_timing_unless_set() {
        let r = Report::new("validate");
        assert!(!r.to_json().contains("timing_ms"));
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["status"], "ok");
    }
}
