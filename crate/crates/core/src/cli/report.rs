//! Report types. Bodies contain no timing so that equal configs give equal bytes.

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use super::config::SuiteConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expected {
    /// Oracle value compared with a closed form.
    ClosedForm,
    /// Exact identity checked symbolically or exhaustively.
    Exact,
    /// Property checked on samples.
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    Pass,
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseReport {
    pub label: String,
    pub inputs_digest: String,
    pub expected: Expected,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl CaseReport {
    /// Runs `body`; `Err` carries the failure witness.
    pub fn check(
        label: impl Into<String>,
        inputs: Value,
        expected: Expected,
        body: impl FnOnce() -> std::result::Result<(), String>,
    ) -> Self {
        let witness = body().err();
        CaseReport {
            label: label.into(),
            inputs_digest: digest(&inputs),
            expected,
            outcome: if witness.is_none() { Outcome::Pass } else { Outcome::Fail },
            witness,
        }
    }

    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

pub fn digest(v: &Value) -> String {
    let bytes = serde_json::to_vec(v).expect("JSON values serialise");
    Sha256::digest(bytes).iter().map(|b| format!("{:02x}", b)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub anchor: String,
    pub passed: usize,
    pub failed: usize,
    pub cases: Vec<CaseReport>,
}

impl SuiteReport {
    pub fn new(name: &str, anchor: &str, cases: Vec<CaseReport>) -> Self {
        let passed = cases.iter().filter(|c| c.passed()).count();
        SuiteReport { name: name.into(), anchor: anchor.into(), passed, failed: cases.len() - passed, cases }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub config: SuiteConfig,
    pub passed: usize,
    pub failed: usize,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn assemble(config: SuiteConfig, mut suites: Vec<SuiteReport>) -> Self {
        suites.sort_by(|a, b| a.name.cmp(&b.name));
        let passed = suites.iter().map(|s| s.passed).sum();
        let failed = suites.iter().map(|s| s.failed).sum();
        Report { schema_version: SCHEMA_VERSION, config, passed, failed, suites }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }
}

/// Helpers for building failure witnesses.
pub fn ensure(cond: bool, witness: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(witness())
    }
}
