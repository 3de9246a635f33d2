use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Machine-readable run report. The JSON form round-trips losslessly and,
/// apart from the `millis` fields, is a deterministic function of the
/// configuration.
#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: BTreeMap<String, String>,
    pub tasks: Vec<TaskResult>,
}

#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct TaskResult {
    pub task: String,
    /// equal | proper-submodule | vanishes | non-vanishing | unknown |
    /// pass | fail | info
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub span_rank: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relative_factors: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub census: Option<BTreeMap<String, usize>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, String>,
    pub millis: u128,
}

impl TaskResult {
    pub fn new(task: impl Into<String>, verdict: impl Into<String>) -> Self {
        TaskResult {
            task: task.into(),
            verdict: verdict.into(),
            kernel_rank: None,
            span_rank: None,
            relative_factors: None,
            census: None,
            details: BTreeMap::new(),
            millis: 0,
        }
    }
}

impl ReportDocument {
    pub fn new(command: &str, config: BTreeMap<String, String>) -> Self {
        ReportDocument {
            tool: "wedgekernel".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            config,
            tasks: Vec::new(),
        }
    }

    /// Order-deterministic assembly: tasks sorted by key.
    pub fn finish(&mut self) {
        self.tasks.sort_by(|a, b| a.task.cmp(&b.task));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{} {} — {}\n", self.tool, self.version, self.command));
        for (k, v) in &self.config {
            out.push_str(&format!("  {k}: {v}\n"));
        }
        for t in &self.tasks {
            out.push_str(&format!("[{}] {}", t.verdict, t.task));
            if let (Some(k), Some(s)) = (t.kernel_rank, t.span_rank) {
                out.push_str(&format!("  kernel {k}, span {s}"));
            }
            out.push_str(&format!("  ({} ms)\n", t.millis));
            if let Some(f) = &t.relative_factors {
                out.push_str(&format!("    factors: [{}]\n", f.join(", ")));
            }
            if let Some(c) = &t.census {
                for (k, n) in c {
                    out.push_str(&format!("    {k}: {n}\n"));
                }
            }
            for (k, v) in &t.details {
                let v = v.replace('\n', "\n      ");
                out.push_str(&format!("    {k}: {v}\n"));
            }
        }
        out
    }
}
