use serde::Serialize;
use serde_json::Value;

use crate::formats::emit_graph6_string;
use crate::graph::Graph;

#[derive(Debug, Serialize)]
pub struct InputFingerprint {
    pub graph6: String,
    pub vertices: usize,
    pub edges: usize,
}

impl InputFingerprint {
    pub fn of(g: &Graph) -> Self {
        InputFingerprint {
            graph6: emit_graph6_string(g),
            vertices: g.vertex_count(),
            edges: g.edge_count(),
        }
    }
}

/// Machine-readable result of one CLI invocation. Counts are decimal
/// strings; verdicts are "true", "false" or "indeterminate".
#[derive(Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub input: InputFingerprint,
    pub command: Vec<String>,
    /// "ok" or "indeterminate".
    pub status: &'static str,
    pub results: Value,
    /// Only filled with `--timing`, so default reports are byte-stable.
    pub wall_time_seconds: Option<f64>,
}

impl Report {
    pub fn new(g: &Graph, command: Vec<String>, results: Value, indeterminate: bool) -> Self {
        Report {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            input: InputFingerprint::of(g),
            command,
            status: if indeterminate { "indeterminate" } else { "ok" },
            results,
            wall_time_seconds: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report is serializable");
        text.push('\n');
        text
    }
}
