//! Verdicts and reports shared by every checker.

use std::time::Duration;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use serde_json::Value;

/// Outcome class of a check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    /// Proven to hold, by exact computation or a theorem.
    HoldsDecisive,
    /// Proven to fail; a witness is attached.
    FailsDecisive,
    /// Verified through homological degree `N` only.
    EvidenceUpTo(usize),
    /// Preconditions of the check are not met.
    Inapplicable,
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::HoldsDecisive => "HoldsDecisive",
            Status::FailsDecisive => "FailsDecisive",
            Status::EvidenceUpTo(_) => "EvidenceUpTo",
            Status::Inapplicable => "Inapplicable",
        }
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Status::FailsDecisive)
    }

    /// Holds decisively or as far as it was checked.
    pub fn is_positive(&self) -> bool {
        matches!(self, Status::HoldsDecisive | Status::EvidenceUpTo(_))
    }
}

/// Data showing why a check failed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    pub description: String,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

impl Witness {
    pub fn new(degree: Option<usize>, description: impl Into<String>) -> Self {
        Witness {
            degree,
            description: description.into(),
            data: Value::Null,
        }
    }

    pub fn with_data(mut self, data: Value) -> Self {
        self.data = data;
        self
    }
}

/// One sub-check run while producing a verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TraceEntry {
    pub rule: String,
    pub outcome: String,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl TraceEntry {
    pub fn new(rule: impl Into<String>, outcome: impl Into<String>, detail: impl Into<String>) -> Self {
        TraceEntry {
            rule: rule.into(),
            outcome: outcome.into(),
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub status: Status,
    /// Tag of the rule or theorem that produced the status.
    pub rule: String,
    pub witness: Option<Witness>,
    pub trace: Vec<TraceEntry>,
}

impl Verdict {
    pub fn new(status: Status, rule: impl Into<String>) -> Self {
        Verdict {
            status,
            rule: rule.into(),
            witness: None,
            trace: Vec::new(),
        }
    }

    pub fn holds(rule: impl Into<String>) -> Self {
        Self::new(Status::HoldsDecisive, rule)
    }

    pub fn fails(rule: impl Into<String>, witness: Witness) -> Self {
        Self::new(Status::FailsDecisive, rule).with_witness(witness)
    }

    pub fn evidence(rule: impl Into<String>, n: usize) -> Self {
        Self::new(Status::EvidenceUpTo(n), rule)
    }

    pub fn with_witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn with_trace(mut self, trace: Vec<TraceEntry>) -> Self {
        self.trace = trace;
        self
    }

    pub fn push(&mut self, e: TraceEntry) {
        self.trace.push(e);
    }
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("rule", &self.rule)?;
        m.serialize_entry("status", self.status.name())?;
        if let Status::EvidenceUpTo(n) = self.status {
            m.serialize_entry("up_to", &n)?;
        }
        m.serialize_entry("trace", &self.trace)?;
        if let Some(w) = &self.witness {
            m.serialize_entry("witness", w)?;
        }
        m.end()
    }
}

/// A verdict plus the data it was computed from.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckReport {
    pub verdict: Verdict,
    pub truncation: Option<usize>,
    /// Command-specific payload.
    pub data: Value,
    /// Wall-clock time per stage; never serialized, so reports stay
    /// byte-reproducible.
    pub timings: Vec<(String, Duration)>,
}

impl CheckReport {
    pub fn new(verdict: Verdict) -> Self {
        CheckReport {
            verdict,
            truncation: None,
            data: Value::Null,
            timings: Vec::new(),
        }
    }

    pub fn with_truncation(mut self, n: usize) -> Self {
        self.truncation = Some(n);
        self
    }

    pub fn with_data(mut self, data: Value) -> Self {
        self.data = data;
        self
    }

    pub fn status(&self) -> Status {
        self.verdict.status
    }
}
