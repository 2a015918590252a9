//! Seeded verification batteries and the report format shared by the CLI.
//!
//! Each suite returns a list of [`Check`]s. A check is either binding or
//! informational; a [`Report`] passes iff every binding check passes.
//! Random draws come from per-battery substreams of the seed, so adding a
//! battery never changes the draws of another one.

mod census;
mod maps;
pub mod random;
mod realization;
mod ring;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    /// Stable identifier, `suite.battery`.
    pub name: String,
    /// The statement being checked.
    pub claim: String,
    pub passed: bool,
    /// Informational checks are reported but never fail a run.
    pub informational: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: &str, claim: &str, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), claim: claim.into(), passed, informational: false, detail: detail.into() }
    }

    pub fn informational(mut self) -> Self {
        self.informational = true;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Realization,
    Maps,
    Ring,
    Circulant,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 5] = ["realization", "maps", "ring", "circulant", "all"];
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "realization" => Suite::Realization,
            "maps" => Suite::Maps,
            "ring" => Suite::Ring,
            "circulant" => Suite::Circulant,
            "all" => Suite::All,
            other => return Err(Error::Parse { line: 0, msg: format!("unknown suite `{other}`") }),
        })
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let i = *self as usize;
        f.write_str(Suite::NAMES[i])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub workers: usize,
    /// Also run the frontier census cells, including the 10-codeword one.
    pub frontier: bool,
    /// Range of `n` for the circulant table.
    pub n_min: usize,
    pub n_max: usize,
    pub random_realizations: usize,
    pub random_codes_n4: usize,
    pub map_trials: usize,
    pub conjugation_pairs: usize,
    pub ring_law_trials: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 42,
            workers: 1,
            frontier: false,
            n_min: 3,
            n_max: 6,
            random_realizations: 100,
            random_codes_n4: 200,
            map_trials: 500,
            conjugation_pairs: 50,
            ring_law_trials: 1000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub seed: u64,
    pub workers: usize,
    pub checks: Vec<Check>,
    pub payload: Value,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(command: impl Into<String>, seed: u64, workers: usize) -> Self {
        Report { command: command.into(), seed, workers, checks: Vec::new(), payload: Value::Null, elapsed_ms: 0 }
    }

    /// True iff every binding check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || c.informational)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed && !c.informational)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))
    }

    /// JSON with every `elapsed_ms` field removed and no worker count, for
    /// byte-level comparison of repeated runs.
    pub fn canonical_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("reports serialize");
        strip_timing(&mut v);
        if let Value::Object(map) = &mut v {
            map.remove("workers");
        }
        serde_json::to_string(&v).expect("values serialize")
    }

    /// One line per check, then a summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match (c.passed, c.informational) {
                (true, _) => "PASS",
                (false, true) => "INFO",
                (false, false) => "FAIL",
            };
            out.push_str(&format!("{tag} {}: {}", c.name, c.claim));
            if !c.detail.is_empty() {
                out.push_str(&format!(" [{}]", c.detail));
            }
            out.push('\n');
        }
        let binding = self.checks.iter().filter(|c| !c.informational).count();
        let failed = self.failures().count();
        out.push_str(&format!(
            "{}: {} of {} binding checks passed, {} informational ({} ms)\n",
            if self.passed() { "ok" } else { "FAILED" },
            binding - failed,
            binding,
            self.checks.len() - binding,
            self.elapsed_ms
        ));
        out
    }
}

fn strip_timing(v: &mut Value) {
    match v {
        Value::Object(map) => {
            map.remove("elapsed_ms");
            map.values_mut().for_each(strip_timing);
        }
        Value::Array(items) => items.iter_mut().for_each(strip_timing),
        _ => {}
    }
}

/// Runs a suite. Failures are report content; an `Err` means a battery
/// could not run at all.
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Result<Report> {
    let start = Instant::now();
    let mut report = Report::new(format!("verify {suite}"), cfg.seed, cfg.workers);
    let mut payload = serde_json::Map::new();
    let parts: &[Suite] = match suite {
        Suite::All => &[Suite::Realization, Suite::Maps, Suite::Ring, Suite::Circulant],
        _ => std::slice::from_ref(&suite),
    };
    for &part in parts {
        let (checks, extra) = match part {
            Suite::Realization => realization::run(cfg)?,
            Suite::Maps => maps::run(cfg)?,
            Suite::Ring => ring::run(cfg)?,
            Suite::Circulant => census::run(cfg)?,
            Suite::All => unreachable!(),
        };
        report.checks.extend(checks);
        payload.insert(part.to_string(), extra);
    }
    report.payload = Value::Object(payload);
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

pub use census::circulant_table;
pub use realization::{canonical_form, codes_on};
