//! The JSON report and its human-readable rendering.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Undetermined,
    Info,
}

#[derive(Debug, Clone, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Debug, Clone, Serialize)]
pub struct InputDigest {
    pub file: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn new(file: &str, bytes: &[u8]) -> Self {
        InputDigest { file: file.to_string(), sha256: hex::encode(Sha256::digest(bytes)) }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Item {
    pub ring: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub module: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequence: Option<String>,
    pub status: Status,
    /// One line for the text rendering.
    pub summary: String,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl Item {
    pub fn label(&self) -> String {
        let mut s = self.ring.clone();
        for part in [&self.module, &self.sequence].into_iter().flatten() {
            s.push('/');
            s.push_str(part);
        }
        s
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub items: usize,
    pub passed: usize,
    pub failed: usize,
    pub undetermined: usize,
    pub exit_code: i32,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: Tool,
    pub command: String,
    pub input: InputDigest,
    pub options: Value,
    pub items: Vec<Item>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub headline: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_ms: Option<u64>,
}

impl Report {
    pub fn new(command: &str, input: InputDigest, options: Value, items: Vec<Item>, strict: bool) -> Report {
        let count = |s: Status| items.iter().filter(|i| i.status == s).count();
        let failed = count(Status::Fail);
        let undetermined = count(Status::Undetermined);
        let exit_code = if failed > 0 || (strict && undetermined > 0) { 1 } else { 0 };
        let summary = Summary { items: items.len(), passed: count(Status::Pass), failed, undetermined, exit_code };
        Report {
            schema_version: SCHEMA_VERSION,
            tool: Tool { name: "nagata", version: env!("CARGO_PKG_VERSION") },
            command: command.to_string(),
            input,
            options,
            items,
            summary,
            headline: None,
            total_ms: None,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for item in &self.items {
            let tag = match item.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
                Status::Undetermined => "UNDETERMINED",
                Status::Info => "INFO",
            };
            out.push_str(&format!("{tag:<12} {}: {}\n", item.label(), item.summary));
        }
        if let Some(h) = &self.headline {
            out.push_str(h);
            out.push('\n');
        }
        let s = &self.summary;
        out.push_str(&format!(
            "{}: {} items, {} passed, {} failed, {} undetermined\n",
            self.command, s.items, s.passed, s.failed, s.undetermined
        ));
        out
    }
}
