//! The JSON report every command can emit.

use redic_core::solver::SolveStats;
use redic_core::VertexSet;
use serde::Serialize;
use serde_json::Value;

/// Fields serialize in declaration order, so the layout is stable.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub input_digest: String,
    pub outcome: String,
    pub k: Option<usize>,
    pub witness: Option<Vec<usize>>,
    pub bounds: Option<Value>,
    pub stats: Option<SolveStats>,
    /// Command-specific payload (graph6, certificate, rows).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<Value>,
}

impl Report {
    pub fn new(command: &'static str, input_digest: String, outcome: impl Into<String>) -> Report {
        Report {
            command,
            input_digest,
            outcome: outcome.into(),
            k: None,
            witness: None,
            bounds: None,
            stats: None,
            details: None,
        }
    }

    pub fn with_witness(mut self, w: VertexSet) -> Report {
        self.k = Some(w.len());
        self.witness = Some(w.to_vec());
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// What a command produced: exit code, human-readable text and the report.
#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub code: i32,
    pub text: String,
    pub report: Report,
}

impl CommandOutput {
    pub fn render(&self, json: bool) -> String {
        if json {
            self.report.to_json()
        } else {
            self.text.clone()
        }
    }
}

/// Space-separated vertex list.
pub fn format_witness(w: VertexSet) -> String {
    w.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
