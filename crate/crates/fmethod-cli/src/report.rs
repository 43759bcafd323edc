//! The RunReport certificate: stable field names, deterministic
//! ordering, JSON and markdown rendering.

use std::collections::BTreeMap;
use std::io::Write;

use serde::Serialize;

use fmethod::singular::SingularReport;

#[derive(Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Truncated,
}

/// One per-check record.
#[derive(Clone, Serialize)]
pub struct Detail {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub defect_terms: usize,
}

/// The full certificate of one subcommand run. Everything except
/// `timing_ms` is byte-stable across runs for identical inputs.
#[derive(Serialize)]
pub struct RunReport {
    pub command: String,
    pub params: BTreeMap<String, String>,
    pub status: Status,
    pub details: Vec<Detail>,
    pub timing_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub singular_report: Option<SingularReport>,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            params: BTreeMap::new(),
            status: Status::Pass,
            details: Vec::new(),
            timing_ms: 0,
            singular_report: None,
        }
    }

    pub fn param(&mut self, key: &str, value: String) {
        self.params.insert(key.to_string(), value);
    }

    pub fn detail(&mut self, d: Detail) {
        self.details.push(d);
    }

    /// Sets and returns the final status: pass iff every detail has zero
    /// defect terms; truncated (still a pass for the exit code) only for
    /// box-relative completeness claims.
    pub fn settle(&mut self, truncated: bool) -> Status {
        let clean = self.details.iter().all(|d| d.defect_terms == 0);
        self.status = if !clean {
            Status::Fail
        } else if truncated {
            Status::Truncated
        } else {
            Status::Pass
        };
        self.status
    }
}

pub struct ReportSink {
    pub out: Option<std::path::PathBuf>,
    pub markdown: bool,
}

impl ReportSink {
    pub fn emit(&self, report: &RunReport) -> std::io::Result<()> {
        let body = if self.markdown {
            render_markdown(report)
        } else {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        };
        match &self.out {
            Some(path) => std::fs::write(path, body),
            None => std::io::stdout().write_all(body.as_bytes()),
        }
    }
}

fn render_markdown(report: &RunReport) -> String {
    let mut s = String::new();
    let status = match report.status {
        Status::Pass => "pass",
        Status::Fail => "fail",
        Status::Truncated => "truncated",
    };
    s.push_str(&format!("# {} — {}\n\n", report.command, status));
    for (k, v) in &report.params {
        s.push_str(&format!("- {k}: {v}\n"));
    }
    s.push_str(&format!("- timing_ms: {}\n\n", report.timing_ms));
    s.push_str("| check | expected | got | defect terms |\n");
    s.push_str("|---|---|---|---|\n");
    for d in &report.details {
        s.push_str(&format!(
            "| {} | {} | {} | {} |\n",
            escape(&d.name),
            escape(&d.expected),
            escape(&d.got),
            d.defect_terms
        ));
    }
    if let Some(sr) = &report.singular_report {
        s.push_str("\n```json\n");
        s.push_str(&serde_json::to_string_pretty(sr).expect("report serializes"));
        s.push_str("\n```\n");
    }
    s
}

fn escape(text: &str) -> String {
    text.replace('|', "\\|")
}
