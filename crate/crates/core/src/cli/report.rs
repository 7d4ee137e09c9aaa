use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::error::Error;
use crate::resolution::{BettiEntry, BettiTable};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Debug, Serialize)]
pub struct Engine {
    pub version: &'static str,
    /// Wall-clock time; excluded from determinism comparisons along with the version.
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorInfo {
    pub kind: &'static str,
    pub message: String,
    pub exit_code: i32,
}

impl From<&Error> for ErrorInfo {
    fn from(e: &Error) -> Self {
        let kind = match e {
            Error::Parse { .. } => "parse",
            Error::Spec(_) => "spec",
            Error::RingMismatch => "ring-mismatch",
            Error::Hypothesis(_) => "hypothesis",
            Error::Characteristic { .. } => "characteristic",
            Error::NotHomogeneous(_) => "not-homogeneous",
            Error::BoundExceeded(_) => "bound-exceeded",
            Error::TableViolation(_) => "table-violation",
            Error::Inconsistent(_) => "inconsistent",
        };
        ErrorInfo { kind, message: e.to_string(), exit_code: e.exit_code() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub summary: Option<String>,
    pub verdicts: BTreeMap<String, Value>,
    pub betti: Vec<BettiEntry>,
    pub witnesses: BTreeMap<String, String>,
    pub details: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    pub engine: Engine,
    #[serde(skip)]
    pub table: Option<BettiTable>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            summary: None,
            verdicts: BTreeMap::new(),
            betti: Vec::new(),
            witnesses: BTreeMap::new(),
            details: BTreeMap::new(),
            error: None,
            engine: Engine { version: ENGINE_VERSION, elapsed_ms: 0 },
            table: None,
        }
    }

    pub fn verdict(&mut self, key: &str, v: impl Serialize) {
        self.verdicts.insert(key.to_string(), to_value(v));
    }

    pub fn detail(&mut self, key: &str, v: impl Serialize) {
        self.details.insert(key.to_string(), to_value(v));
    }

    pub fn witness(&mut self, key: &str, v: impl ToString) {
        self.witnesses.insert(key.to_string(), v.to_string());
    }

    pub fn set_betti(&mut self, table: &BettiTable) {
        self.betti = table.triples();
        self.table = Some(table.clone());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are plain JSON")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command);
        if let Some(s) = &self.summary {
            let _ = writeln!(out, "{s}");
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error ({}): {}", e.kind, e.message);
        }
        for (k, v) in &self.verdicts {
            let _ = writeln!(out, "{k}: {}", plain(v));
        }
        for (k, v) in &self.witnesses {
            let _ = writeln!(out, "witness {k}: {v}");
        }
        for (k, v) in &self.details {
            let _ = writeln!(out, "{k}: {}", plain(v));
        }
        if let Some(t) = &self.table {
            let _ = writeln!(out, "betti:");
            out.push_str(&t.to_string());
        }
        out
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values are plain JSON")
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Drops the fields that legitimately differ between runs.
pub fn canonical(json: &str) -> Option<Value> {
    let mut v: Value = serde_json::from_str(json).ok()?;
    v.as_object_mut()?.remove("engine");
    Some(v)
}
