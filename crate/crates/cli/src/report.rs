//! Reports: a transcript of verdict lines, structured data, an optional
//! constructed structure and an overall status.

use serde::Serialize;
use serde_json::{Map, Value};
use subord::wire::{Structure, StructureJson};

use crate::Format;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Violation,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub status: Status,
    pub transcript: Vec<String>,
    pub data: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure: Option<StructureJson>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report { command, status: Status::Pass, transcript: Vec::new(), data: Map::new(), structure: None }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.transcript.push(text.into());
    }

    /// Records a verdict line; a false verdict marks the report as failed.
    pub fn verdict(&mut self, label: impl std::fmt::Display, ok: bool) -> bool {
        self.line(format!("{label}: {}", if ok { "yes" } else { "no" }));
        if !ok {
            self.fail();
        }
        ok
    }

    pub fn fail(&mut self) {
        self.status = Status::Violation;
    }

    pub fn set(&mut self, key: &str, value: impl Serialize) {
        let value = serde_json::to_value(value).expect("report data serializes");
        self.data.insert(key.to_string(), value);
    }

    pub fn set_structure(&mut self, s: &Structure) {
        self.structure = Some(s.to_json());
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("report serializes") + "\n",
            Format::Text => {
                let mut out = String::new();
                for l in &self.transcript {
                    out.push_str(l);
                    out.push('\n');
                }
                if let Some(s) = &self.structure {
                    out.push_str("structure:\n");
                    out.push_str(&serde_json::to_string(s).expect("structure serializes"));
                    out.push('\n');
                }
                let status = match self.status {
                    Status::Pass => "pass",
                    Status::Violation => "violation",
                };
                out.push_str(&format!("result: {status}\n"));
                out
            }
        }
    }
}
