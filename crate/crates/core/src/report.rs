//! Structured verification outcomes with exact residual witnesses.

use serde::Serialize;
use serde_json::Value;
use std::collections::BTreeMap;

pub const SCHEMA_VERSION: u32 = 1;

/// Keeps reports readable when a check fails everywhere.
const MAX_WITNESSES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    /// A computed result contradicts a claim as printed.
    Finding,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub at: String,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub params: BTreeMap<String, Value>,
    pub status: Status,
    /// Number of elementary checks performed.
    pub checked: u64,
    pub witnesses: Vec<Witness>,
    /// Witnesses beyond the stored ones.
    pub dropped_witnesses: u64,
    pub notes: Vec<String>,
    pub children: Vec<VerificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl VerificationReport {
    pub fn new(name: impl Into<String>) -> Self {
        VerificationReport {
            name: name.into(),
            params: BTreeMap::new(),
            status: Status::Pass,
            checked: 0,
            witnesses: Vec::new(),
            dropped_witnesses: 0,
            notes: Vec::new(),
            children: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn param(mut self, key: &str, v: impl Serialize) -> Self {
        self.params.insert(key.to_string(), serde_json::to_value(v).expect("serializable"));
        self
    }

    pub fn set_param(&mut self, key: &str, v: impl Serialize) {
        self.params.insert(key.to_string(), serde_json::to_value(v).expect("serializable"));
    }

    /// Records one elementary check; a `false` outcome fails the report.
    pub fn check(&mut self, ok: bool, at: impl FnOnce() -> String, residual: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail_with(at(), residual());
        }
    }

    pub fn fail_with(&mut self, at: String, residual: String) {
        self.raise(Status::Fail);
        self.push_witness(at, residual);
    }

    pub fn finding(&mut self, at: String, residual: String) {
        self.raise(Status::Finding);
        self.push_witness(at, residual);
    }

    fn push_witness(&mut self, at: String, residual: String) {
        if self.witnesses.len() < MAX_WITNESSES {
            self.witnesses.push(Witness { at, residual });
        } else {
            self.dropped_witnesses += 1;
        }
    }

    pub fn raise(&mut self, s: Status) {
        self.status = self.status.max(s);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn add_child(&mut self, child: VerificationReport) {
        self.raise(child.status);
        self.checked += child.checked;
        self.children.push(child);
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// Drops timings recursively so that output is byte-stable.
    pub fn strip_timing(&mut self) {
        self.timing_ms = None;
        for c in &mut self.children {
            c.strip_timing();
        }
    }

    /// Runs `f`, recording wall time on the produced report.
    pub fn timed(f: impl FnOnce() -> VerificationReport) -> VerificationReport {
        let t = std::time::Instant::now();
        let mut r = f();
        r.timing_ms = Some(t.elapsed().as_millis() as u64);
        r
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        if let Value::Object(m) = &mut v {
            m.insert("schema_version".into(), Value::from(SCHEMA_VERSION));
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn status_aggregates_to_worst() {
        let mut parent = VerificationReport::new("p");
        let mut a = VerificationReport::new("a");
        a.check(true, String::new, String::new);
        let mut b = VerificationReport::new("b");
        b.finding("x".into(), "1/1".into());
        parent.add_child(a);
        assert!(parent.passed());
        parent.add_child(b);
        assert_eq!(parent.status, Status::Finding);
        let mut c = VerificationReport::new("c");
        c.check(false, || "y".into(), || "2/1".into());
        parent.add_child(c);
        assert_eq!(parent.status, Status::Fail);
        assert_eq!(parent.checked, 2);
    }

    #[test]
    fn witnesses_are_capped() {
        let mut r = VerificationReport::new("r");
        for i in 0..40 {
            r.check(false, || format!("{i}"), || "1/1".into());
        }
        assert_eq!(r.witnesses.len(), MAX_WITNESSES);
        assert_eq!(r.dropped_witnesses, 40 - MAX_WITNESSES as u64);
    }
}
