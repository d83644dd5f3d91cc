//! Report generation behind the `sumsets` command line tool.
//!
//! Single-set reports and manifests are JSON; bulk scan output is CSV with
//! one row per enumerated set, in enumeration order. Every document carries
//! `"schema": 1`.

mod analyze;
mod bench;
mod extremal;
mod scan;

pub use analyze::{run_analyze, AnalyzeOptions, AnalyzeReport, ToolboxSummary};
pub use bench::{random_generator_set, run_bench, BenchOptions, BenchReport, BenchSample};
pub use extremal::{family_sets, run_extremal, ExtremalOptions, ExtremalReport, ExtremalRow};
pub use scan::{
    run_scan, run_stability, ScanMode, ScanOptions, ScanReport, ScanRows, StabilityRow, StabilitySummary,
    StructureRow, ToolboxRow,
};

use std::collections::BTreeMap;
use std::io::Read;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intset::{normalize, normalize_strict, parse_literal, GeneratorSet};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Record of one command invocation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema: u32,
    pub command: String,
    pub parameters: BTreeMap<String, String>,
    pub threads: usize,
    pub tool_version: String,
    pub started_at_ms: u64,
    pub finished_at_ms: u64,
    pub outcome_counts: BTreeMap<String, u64>,
    pub violations: Vec<String>,
}

impl RunManifest {
    pub fn start(command: &str, threads: usize) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            parameters: BTreeMap::new(),
            threads,
            tool_version: TOOL_VERSION.to_string(),
            started_at_ms: now_ms(),
            finished_at_ms: 0,
            outcome_counts: BTreeMap::new(),
            violations: Vec::new(),
        }
    }

    pub fn param(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn count(&mut self, outcome: &str, by: u64) {
        *self.outcome_counts.entry(outcome.to_string()).or_default() += by;
    }

    pub fn finish(&mut self) {
        self.finished_at_ms = now_ms();
    }

    /// 0 when there are no violations, 1 otherwise.
    pub fn exit_code(&self) -> u8 {
        u8::from(!self.violations.is_empty())
    }
}

fn now_ms() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_millis() as u64)
}

/// Set literals from a literal, a file with one literal per line, or `-` for
/// standard input. Blank lines and lines starting with `#` are skipped.
pub fn read_set_literals(source: &str) -> Result<Vec<String>> {
    if source == "-" {
        let mut text = String::new();
        std::io::stdin().read_to_string(&mut text)?;
        return Ok(literal_lines(&text));
    }
    if parse_literal(source).is_ok() {
        return Ok(vec![source.trim().to_string()]);
    }
    let path = Path::new(source);
    if path.is_file() {
        return Ok(literal_lines(&std::fs::read_to_string(path)?));
    }
    // Neither a literal nor a file: report the literal parse error.
    parse_literal(source)?;
    unreachable!("parse_literal failed above")
}

fn literal_lines(text: &str) -> Vec<String> {
    text.lines()
        .map(str::trim)
        .filter(|line| !line.is_empty() && !line.starts_with('#'))
        .map(str::to_string)
        .collect()
}

/// Parses and normalizes a literal, optionally rejecting gcd > 1.
pub fn parse_set(literal: &str, strict: bool) -> Result<GeneratorSet> {
    let raw = parse_literal(literal)?;
    if strict {
        normalize_strict(&raw)
    } else {
        normalize(&raw)
    }
}

/// Serializes rows as CSV with a header line.
pub fn to_csv<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = writer.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))
}

/// `0` / `1` per flag, e.g. `1101`.
pub(crate) fn bits(flags: impl IntoIterator<Item = bool>) -> String {
    flags.into_iter().map(|b| if b { '1' } else { '0' }).collect()
}
