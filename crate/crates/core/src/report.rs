//! Machine-readable outcome of a numerical check.
//!
//! Every check compares a computed `lhs` against a bound `rhs` with
//! `lhs ≤ rhs` expected; `margin = rhs - lhs` and the check passes when
//! `margin ≥ -tolerance`.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub params: BTreeMap<String, Value>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl CheckReport {
    pub fn new(check: impl Into<String>) -> Self {
        CheckReport {
            check: check.into(),
            params: BTreeMap::new(),
            lhs: 0.0,
            rhs: 0.0,
            margin: 0.0,
            tolerance: 0.0,
            pass: true,
            notes: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn values(mut self, lhs: f64, rhs: f64, tolerance: f64) -> Self {
        self.lhs = lhs;
        self.rhs = rhs;
        self.margin = rhs - lhs;
        self.tolerance = tolerance;
        self.pass = self.margin.is_finite() && self.margin >= -tolerance;
        self
    }

    pub fn note(mut self, text: impl Into<String>) -> Self {
        self.notes.push(text.into());
        self
    }

    /// Force failure regardless of the margin (e.g. a side condition broke).
    pub fn fail(mut self, reason: impl Into<String>) -> Self {
        self.pass = false;
        self.notes.push(reason.into());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}
