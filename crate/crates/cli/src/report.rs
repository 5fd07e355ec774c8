//! The JSON report every command writes.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct ModelInfo {
    pub name: String,
    /// SHA-256 of the canonical model JSON.
    pub fingerprint: String,
}

#[derive(Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub detail: Value,
}

#[derive(Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool: &'static str,
    pub version: &'static str,
    /// Arguments after the program name.
    pub command: Vec<String>,
    pub model: ModelInfo,
    pub checks: Vec<CheckResult>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
    /// Milliseconds per phase; only with `--timing`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<String, f64>>,
    pub pass: bool,
}

/// Collects checks, data and timings while a command runs.
pub struct Recorder {
    pub checks: Vec<CheckResult>,
    pub data: Value,
    timing: Option<BTreeMap<String, f64>>,
    verbose: u8,
}

impl Recorder {
    pub fn new(timing: bool, verbose: u8) -> Self {
        Recorder { checks: Vec::new(), data: Value::Null, timing: timing.then(BTreeMap::new), verbose }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: Value) {
        let name = name.into();
        if self.verbose > 0 {
            eprintln!("{} {name}", if pass { "PASS" } else { "FAIL" });
        }
        self.checks.push(CheckResult { name, pass, detail });
    }

    /// Runs `f`, recording its wall time under `phase` when timing is on.
    pub fn timed<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        if self.verbose > 1 {
            eprintln!("running {phase}");
        }
        let start = Instant::now();
        let out = f();
        if let Some(t) = &mut self.timing {
            t.insert(phase.to_string(), start.elapsed().as_secs_f64() * 1e3);
        }
        out
    }

    pub fn finish(self, command: Vec<String>, model: ModelInfo) -> Report {
        let pass = self.checks.iter().all(|c| c.pass);
        Report {
            schema_version: SCHEMA_VERSION,
            tool: "anyonkit",
            version: env!("CARGO_PKG_VERSION"),
            command,
            model,
            checks: self.checks,
            data: self.data,
            timing_ms: self.timing,
            pass,
        }
    }
}
