//! Structured command reports, rendered as text or JSON.
//!
//! All numbers are exact: integers are JSON numbers when they fit in an `i64` and strings
//! otherwise, rationals are strings `"p"` or `"p/q"`. The `timing_ms` field is the only
//! part of a report that may differ between two runs on the same input.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::arith::{BigRational, LatticeVector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Info,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Info => "INFO",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Section {
    pub title: String,
    pub lines: Vec<String>,
    pub data: Value,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub input_sha256: Option<String>,
    pub sections: Vec<Section>,
    pub verdicts: Vec<Verdict>,
    pub timing_ms: Option<u128>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Report {
    pub fn new(command: impl Into<String>, input: Option<&str>) -> Self {
        Report {
            command: command.into(),
            input_sha256: input.map(|t| sha256_hex(t.as_bytes())),
            sections: Vec::new(),
            verdicts: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn section(&mut self, title: &str, lines: Vec<String>, data: Value) {
        self.sections.push(Section { title: title.to_string(), lines, data });
    }

    pub fn verdict(&mut self, name: &str, status: Status, detail: impl Into<String>) {
        self.verdicts.push(Verdict { name: name.to_string(), status, detail: detail.into() });
    }

    pub fn check(&mut self, name: &str, ok: bool, detail: impl Into<String>) {
        self.verdict(name, if ok { Status::Pass } else { Status::Fail }, detail);
    }

    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.status != Status::Fail)
    }

    pub fn find_section(&self, title: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.title == title)
    }

    pub fn find_verdict(&self, name: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    pub fn to_json(&self) -> Value {
        let mut sections = Map::new();
        for s in &self.sections {
            sections.insert(s.title.clone(), s.data.clone());
        }
        let verdicts: Vec<Value> = self
            .verdicts
            .iter()
            .map(|v| json!({"name": v.name, "status": v.status.label(), "detail": v.detail}))
            .collect();
        json!({
            "command": self.command,
            "input_sha256": self.input_sha256,
            "sections": sections,
            "verdicts": verdicts,
            "passed": self.passed(),
            "timing_ms": self.timing_ms.map(|t| t as u64),
        })
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "command: {}", self.command).unwrap();
        if let Some(d) = &self.input_sha256 {
            writeln!(out, "input sha256: {d}").unwrap();
        }
        if let Some(t) = self.timing_ms {
            writeln!(out, "time: {t} ms").unwrap();
        }
        for s in &self.sections {
            writeln!(out, "\n[{}]", s.title).unwrap();
            for line in &s.lines {
                writeln!(out, "  {line}").unwrap();
            }
        }
        if !self.verdicts.is_empty() {
            writeln!(out).unwrap();
        }
        for v in &self.verdicts {
            writeln!(out, "{} {}: {}", v.status.label(), v.name, v.detail).unwrap();
        }
        out
    }
}

pub fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

pub fn ints(xs: &[BigInt]) -> Value {
    Value::Array(xs.iter().map(int).collect())
}

pub fn rational(x: &BigRational) -> Value {
    json!(x.to_string())
}

pub fn rationals(xs: &[BigRational]) -> Value {
    Value::Array(xs.iter().map(rational).collect())
}

pub fn vector(v: &LatticeVector) -> Value {
    ints(&v.0)
}

pub fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}
