use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

use cotstruct_core::cotstructure::{Outcome, Report, TowerTrace};
use cotstruct_core::exact_linear::Field;

pub const REPORT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    InputError,
    NonTerminating,
    VerificationFailed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::InputError => 1,
            Status::NonTerminating => 2,
            Status::VerificationFailed => 3,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub verdicts: usize,
    pub passed: usize,
    pub failed: usize,
    pub inconclusive: usize,
    /// Failed or inconclusive assertion-level verdicts.
    pub violations: usize,
    /// Every attached witness re-checks as a nonzero homotopy class.
    pub witnesses_verified: bool,
}

/// Machine-readable result of one command. Rendered through
/// `serde_json::Value`, whose maps keep keys sorted.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub report_version: u32,
    pub command: String,
    pub field: Option<String>,
    pub inputs: Vec<String>,
    pub status: Status,
    pub exit_code: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub dimensions: BTreeMap<String, Value>,
    pub verdicts: Vec<Value>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tower: Option<TowerTrace>,
    pub outputs: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl RunReport {
    pub fn new(command: &str, inputs: Vec<String>) -> Self {
        RunReport {
            report_version: REPORT_VERSION,
            command: command.to_string(),
            field: None,
            inputs,
            status: Status::Pass,
            exit_code: 0,
            error: None,
            dimensions: BTreeMap::new(),
            verdicts: Vec::new(),
            summary: Summary {
                witnesses_verified: true,
                ..Summary::default()
            },
            tower: None,
            outputs: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn dim(&mut self, key: &str, value: impl Serialize) {
        self.dimensions.insert(
            key.to_string(),
            serde_json::to_value(value).expect("serializable"),
        );
    }

    pub fn add<F: Field>(&mut self, report: &Report<F>) {
        for v in &report.verdicts {
            let mut value = serde_json::to_value(v).expect("verdicts serialize");
            if let Value::Object(map) = &mut value {
                map.insert("report".into(), Value::String(report.name.clone()));
            }
            self.verdicts.push(value);
            let s = &mut self.summary;
            s.verdicts += 1;
            match v.outcome {
                Outcome::Pass => s.passed += 1,
                Outcome::Fail => s.failed += 1,
                Outcome::Inconclusive => s.inconclusive += 1,
            }
            if v.is_violation() {
                s.violations += 1;
            }
            if let Some(w) = &v.witness {
                s.witnesses_verified &= w.verify();
            }
        }
    }

    /// Sets status and exit code from the verdicts unless an error was recorded.
    pub fn finish(&mut self) {
        if self.error.is_none() {
            self.status = if self.summary.violations > 0 || !self.summary.witnesses_verified {
                Status::VerificationFailed
            } else {
                Status::Pass
            };
        }
        self.exit_code = self.status.exit_code();
    }

    pub fn fail(&mut self, status: Status, error: String) {
        self.status = status;
        self.error = Some(error);
        self.exit_code = status.exit_code();
    }

    pub fn render(&self) -> String {
        let value = serde_json::to_value(self).expect("report serializes");
        let mut s = serde_json::to_string_pretty(&value).expect("report renders");
        s.push('\n');
        s
    }
}
