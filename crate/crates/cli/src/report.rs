use std::time::Duration;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
}

/// What a command computed, before timing and digests are attached.
pub struct Outcome {
    /// Canonical bytes of everything the result depends on.
    pub inputs: Vec<u8>,
    pub result: Value,
    pub checks: Vec<Check>,
    pub summary: String,
}

impl Outcome {
    pub fn new(inputs: Vec<u8>, result: Value) -> Self {
        Self { inputs, result, checks: Vec::new(), summary: String::new() }
    }

    pub fn check(&mut self, name: &str, passed: bool) -> bool {
        self.checks.push(Check { name: name.to_string(), passed });
        passed
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: Vec<String>,
    pub input_digest: String,
    pub result: Value,
    pub checks: Vec<Check>,
    pub passed: bool,
    pub wall_time_ms: f64,
}

impl Report {
    pub fn new(command: Vec<String>, outcome: Outcome, elapsed: Duration) -> Self {
        let passed = outcome.passed();
        Self {
            command,
            input_digest: digest(&outcome.inputs),
            result: outcome.result,
            checks: outcome.checks,
            passed,
            wall_time_ms: elapsed.as_secs_f64() * 1e3,
        }
    }
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

/// Appends a length-prefixed field so that concatenated inputs stay unambiguous.
pub fn push_field(buf: &mut Vec<u8>, bytes: &[u8]) {
    buf.extend_from_slice(&(bytes.len() as u64).to_le_bytes());
    buf.extend_from_slice(bytes);
}
