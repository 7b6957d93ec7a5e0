//! Machine-readable reports: JSON for tooling, TSV for tables. Reports are
//! deterministic given the configuration and engine version; records are
//! keyed and sorted, and no wall-clock data enters the canonical files.

use std::collections::BTreeMap;
use std::path::Path;

use anyhow::Result;
use serde::Serialize;

use crate::format::REPORT_SCHEMA;
use coherence_core::weight::WeightVector;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: String,
    pub engine_version: String,
    pub experiment: String,
    pub labeling: String,
    pub operators: String,
    pub records: Vec<Record>,
    pub summary: Summary,
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    /// Instance key; unique and sorted within a report.
    pub key: String,
    /// The weight collection of the instance, when applicable.
    pub lambda: Vec<Vec<i64>>,
    /// Named boolean checks; the record passes iff all hold.
    pub checks: BTreeMap<String, bool>,
    /// Numeric and textual payloads (dimensions, hashes, witnesses).
    pub data: BTreeMap<String, String>,
    pub pass: bool,
    pub complete: bool,
}

impl Record {
    pub fn new(key: impl Into<String>) -> Self {
        Record {
            key: key.into(),
            lambda: Vec::new(),
            checks: BTreeMap::new(),
            data: BTreeMap::new(),
            pass: true,
            complete: true,
        }
    }

    pub fn with_lambda(mut self, lambda: &[Vec<i64>]) -> Self {
        self.lambda = lambda.to_vec();
        self
    }

    pub fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.checks.insert(name.into(), ok);
        if !ok {
            self.pass = false;
        }
    }

    pub fn datum(&mut self, name: impl Into<String>, value: impl ToString) {
        self.data.insert(name.into(), value.to_string());
    }

    pub fn incomplete(&mut self, reason: impl ToString) {
        self.complete = false;
        self.pass = false;
        self.data.insert("error".into(), reason.to_string());
    }
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub incomplete: usize,
}

impl Report {
    pub fn assemble(
        experiment: &str,
        labeling: &str,
        operators: &str,
        mut records: Vec<Record>,
    ) -> Report {
        records.sort_by(|a, b| a.key.cmp(&b.key));
        let summary = Summary {
            total: records.len(),
            passed: records.iter().filter(|r| r.pass).count(),
            failed: records.iter().filter(|r| !r.pass && r.complete).count(),
            incomplete: records.iter().filter(|r| !r.complete).count(),
        };
        Report {
            schema: REPORT_SCHEMA.to_string(),
            engine_version: ENGINE_VERSION.to_string(),
            experiment: experiment.to_string(),
            labeling: labeling.to_string(),
            operators: operators.to_string(),
            records,
            summary,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0 && self.summary.incomplete == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// Flat table: fixed columns, then `name=value` payload pairs.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("key\tpass\tcomplete\tchecks\tdata\n");
        for r in &self.records {
            let checks: Vec<String> = r
                .checks
                .iter()
                .map(|(k, v)| format!("{k}={}", if *v { "ok" } else { "FAIL" }))
                .collect();
            let data: Vec<String> = r.data.iter().map(|(k, v)| format!("{k}={v}")).collect();
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                r.key,
                if r.pass { "pass" } else { "FAIL" },
                if r.complete { "yes" } else { "INCOMPLETE" },
                checks.join(","),
                data.join(","),
            ));
        }
        out.push_str(&format!(
            "# total={} passed={} failed={} incomplete={}\n",
            self.summary.total, self.summary.passed, self.summary.failed, self.summary.incomplete
        ));
        out
    }

    pub fn write(&self, dir: &Path, stem: &str) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join(format!("{stem}.json")), self.to_json())?;
        std::fs::write(dir.join(format!("{stem}.tsv")), self.to_tsv())?;
        Ok(())
    }

    /// One-line console summary.
    pub fn summary_line(&self) -> String {
        format!(
            "{}: {} records, {} passed, {} failed, {} incomplete",
            self.experiment,
            self.summary.total,
            self.summary.passed,
            self.summary.failed,
            self.summary.incomplete
        )
    }
}

/// FNV-1a over the canonical rendering of a character; stable across runs
/// and platforms.
pub fn character_hash(ch: &BTreeMap<WeightVector, usize>) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for (w, m) in ch {
        for b in format!("{}:{m};", w.display_compact()).bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    format!("{h:016x}")
}

/// The same hash over a degree-resolved character.
pub fn degree_character_hash(ch: &BTreeMap<(WeightVector, usize), usize>) -> String {
    let mut h: u64 = 0xcbf29ce484222325;
    for ((w, d), m) in ch {
        for b in format!("{}@{d}:{m};", w.display_compact()).bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    format!("{h:016x}")
}
