use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{bits, RunManifest, SCHEMA_VERSION};
use crate::enumerate::{candidates, is_coprime, MAX_DIAMETER};
use crate::error::{Error, Result};
use crate::intset::GeneratorSet;
use crate::parallel;
use crate::stability::{stability_scan_unjudged, StabilityOutcome, StabilityScanOptions};
use crate::structure::SetAnalysis;
use crate::toolbox::{dixmier_interval_check, freiman_check};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanMode {
    Structure,
    Stability,
    Toolbox,
}

impl fmt::Display for ScanMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScanMode::Structure => "structure",
            ScanMode::Stability => "stability",
            ScanMode::Toolbox => "toolbox",
        })
    }
}

impl FromStr for ScanMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "structure" => Ok(ScanMode::Structure),
            "stability" => Ok(ScanMode::Stability),
            "toolbox" => Ok(ScanMode::Toolbox),
            other => Err(Error::InvalidArgs(format!("unknown scan mode {other:?}"))),
        }
    }
}

/// Diameter and size filters. `l` alone selects one diameter; with `l_max`
/// it is the lower end of the range.
#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub mode: ScanMode,
    pub l: Option<u64>,
    pub l_max: Option<u64>,
    pub n: Option<u64>,
    /// Stability mode only; defaults to the stability threshold.
    pub m: Option<u64>,
    /// Structure mode checks `m` in `[M, M + m_span - 1]`.
    pub m_span: u64,
    /// Stability mode only: allow `n = 5` and `m` below the threshold.
    pub exploratory: bool,
    pub threads: Option<usize>,
}

impl ScanOptions {
    pub fn new(mode: ScanMode) -> Self {
        Self {
            mode,
            l: None,
            l_max: None,
            n: None,
            m: None,
            m_span: 4,
            exploratory: false,
            threads: None,
        }
    }

    fn diameters(&self) -> Result<std::ops::RangeInclusive<u64>> {
        let range = match (self.l, self.l_max) {
            (Some(l), Some(l_max)) => l..=l_max,
            (Some(l), None) => l..=l,
            (None, Some(l_max)) => 2..=l_max,
            (None, None) => return Err(Error::InvalidArgs("give --l or --l-max".into())),
        };
        if *range.start() < 2 || range.is_empty() {
            return Err(Error::InvalidArgs(format!(
                "empty diameter range {}..={}",
                range.start(),
                range.end()
            )));
        }
        if *range.end() > MAX_DIAMETER {
            return Err(Error::Capacity {
                requested: *range.end(),
                cap: MAX_DIAMETER,
            });
        }
        Ok(range)
    }

    fn sizes(&self, l: u64) -> std::ops::RangeInclusive<u64> {
        match self.n {
            Some(n) => n..=n,
            None => 3..=l + 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureRow {
    pub set: String,
    pub n: u64,
    pub l: u64,
    pub k: u64,
    pub r: u64,
    #[serde(rename = "M")]
    pub threshold: u64,
    pub delta: u64,
    /// One bit per `m` from `M` upwards.
    pub holds: String,
    /// Gap length at `m = M`.
    pub gap: i64,
    pub bound: i64,
    pub tight: String,
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityRow {
    pub set: String,
    pub n: u64,
    pub l: u64,
    pub m: u64,
    /// `SkippedNonCoprime` for candidates with gcd > 1.
    pub outcome: String,
    pub expected: String,
    pub witness: Option<u64>,
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolboxRow {
    pub set: String,
    pub n: u64,
    pub l: u64,
    pub k: u64,
    pub freiman: bool,
    /// One bit per `m` in `[1, 3k + 4]`.
    pub dixmier_interval: String,
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScanRows {
    Structure(Vec<StructureRow>),
    Stability(Vec<StabilityRow>),
    Toolbox(Vec<ToolboxRow>),
}

impl ScanRows {
    pub fn len(&self) -> usize {
        match self {
            ScanRows::Structure(rows) => rows.len(),
            ScanRows::Stability(rows) => rows.len(),
            ScanRows::Toolbox(rows) => rows.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn to_csv(&self) -> Result<String> {
        match self {
            ScanRows::Structure(rows) => super::to_csv(rows),
            ScanRows::Stability(rows) => super::to_csv(rows),
            ScanRows::Toolbox(rows) => super::to_csv(rows),
        }
    }
}

/// Rows in enumeration order plus the run manifest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub schema: u32,
    pub mode: ScanMode,
    pub rows: ScanRows,
    #[serde(skip)]
    pub manifest: Option<RunManifest>,
}

impl ScanReport {
    pub fn manifest(&self) -> &RunManifest {
        self.manifest.as_ref().expect("scan reports carry a manifest")
    }

    pub fn exit_code(&self) -> u8 {
        self.manifest().exit_code()
    }
}

const OK: &str = "ok";
const VIOLATION: &str = "violation";

/// Enumerates every set in the selected range and runs the mode's checks.
/// Rows and violations come back in enumeration order regardless of the
/// thread count.
pub fn run_scan(options: &ScanOptions) -> Result<ScanReport> {
    let threads = parallel::resolve_threads(options.threads);
    let mut manifest = RunManifest::start("scan", threads);
    manifest.param("mode", options.mode);
    for (key, value) in [("l", options.l), ("l_max", options.l_max), ("n", options.n), ("m", options.m)] {
        if let Some(v) = value {
            manifest.param(key, v);
        }
    }
    let rows = match options.mode {
        ScanMode::Structure => {
            manifest.param("m_span", options.m_span);
            let rows = structure_rows(options, threads)?;
            tally(&mut manifest, rows.iter().map(|r| (r.status.as_str(), &r.set)));
            ScanRows::Structure(rows)
        }
        ScanMode::Toolbox => {
            let rows = toolbox_rows(options, threads)?;
            tally(&mut manifest, rows.iter().map(|r| (r.status.as_str(), &r.set)));
            ScanRows::Toolbox(rows)
        }
        ScanMode::Stability => {
            manifest.param("exploratory", options.exploratory);
            let rows = stability_rows(options, threads)?;
            for row in &rows {
                manifest.count(&row.outcome, 1);
                if row.status == VIOLATION {
                    manifest.violations.push(format!(
                        "{{{}}} at m = {}: expected {}, observed {}",
                        row.set, row.m, row.expected, row.outcome
                    ));
                }
            }
            ScanRows::Stability(rows)
        }
    };
    manifest.count("rows", rows.len() as u64);
    manifest.finish();
    Ok(ScanReport {
        schema: SCHEMA_VERSION,
        mode: options.mode,
        rows,
        manifest: Some(manifest),
    })
}

fn tally<'a>(manifest: &mut RunManifest, rows: impl Iterator<Item = (&'a str, &'a String)>) {
    for (status, set) in rows {
        manifest.count(status, 1);
        if status == VIOLATION {
            manifest.violations.push(format!("{{{set}}}"));
        }
    }
}

/// Coprime sets in enumeration order: by `l`, then `n`, then colex.
fn coprime_sets(options: &ScanOptions) -> Result<Vec<GeneratorSet>> {
    let mut sets = Vec::new();
    for l in options.diameters()? {
        for n in options.sizes(l) {
            for elements in candidates(l, n).filter(|e| is_coprime(e)) {
                sets.push(GeneratorSet::new(elements)?);
            }
        }
    }
    Ok(sets)
}

fn structure_rows(options: &ScanOptions, threads: usize) -> Result<Vec<StructureRow>> {
    if options.m_span == 0 {
        return Err(Error::InvalidArgs("m_span must be at least 1".into()));
    }
    let sets = coprime_sets(options)?;
    parallel::install(threads, || {
        sets.par_iter()
            .map(|a| structure_row(a, options.m_span))
            .collect()
    })
}

fn structure_row(a: &GeneratorSet, span: u64) -> Result<StructureRow> {
    let analysis = SetAnalysis::new(a);
    let p = analysis.shape;
    let mut verdicts = Vec::with_capacity(span as usize);
    let mut violation = false;
    for m in p.threshold..p.threshold + span {
        let v = analysis.verdict(m)?;
        violation |= analysis.judge(&v).is_err();
        verdicts.push(v);
    }
    Ok(StructureRow {
        set: a.literal(),
        n: a.n(),
        l: a.l(),
        k: p.k,
        r: p.r,
        threshold: p.threshold,
        delta: p.delta,
        holds: bits(verdicts.iter().map(|v| v.holds)),
        gap: verdicts[0].gap_length,
        bound: verdicts[0].bound,
        tight: bits(verdicts.iter().map(|v| v.tight)),
        status: if violation { VIOLATION } else { OK }.to_string(),
    })
}

fn toolbox_rows(options: &ScanOptions, threads: usize) -> Result<Vec<ToolboxRow>> {
    let sets = coprime_sets(options)?;
    parallel::install(threads, || sets.par_iter().map(toolbox_row).collect())
}

fn toolbox_row(a: &GeneratorSet) -> Result<ToolboxRow> {
    let k = crate::structure::shape_params(a).k;
    let freiman = freiman_check(a);
    let dixmier = (1..=3 * k + 4)
        .map(|m| dixmier_interval_check(a, m))
        .collect::<Result<Vec<_>>>()?;
    let ok = freiman && dixmier.iter().all(|&b| b);
    Ok(ToolboxRow {
        set: a.literal(),
        n: a.n(),
        l: a.l(),
        k,
        freiman,
        dixmier_interval: bits(dixmier),
        status: if ok { OK } else { VIOLATION }.to_string(),
    })
}

/// `(l, n)` pairs for a stability scan. An explicit `n` is passed through
/// as given so that invalid sizes are reported; otherwise every valid size.
fn stability_pairs(options: &ScanOptions) -> Result<Vec<(u64, u64)>> {
    let mut pairs = Vec::new();
    let lowest = if options.exploratory { 5 } else { 6 };
    for l in options.diameters()? {
        match options.n {
            Some(n) => pairs.push((l, n)),
            None => pairs.extend((lowest..l).map(|n| (l, n))),
        }
    }
    Ok(pairs)
}

fn stability_rows(options: &ScanOptions, threads: usize) -> Result<Vec<StabilityRow>> {
    let scan_options = StabilityScanOptions {
        m: options.m,
        threads: Some(threads),
        exploratory: options.exploratory,
    };
    let mut rows = Vec::new();
    for (l, n) in stability_pairs(options)? {
        let scan = stability_scan_unjudged(l, n, &scan_options)?;
        for entry in &scan.entries {
            let set = crate::intset::join(entry.elements.iter());
            let name = |o: Option<StabilityOutcome>| o.map_or("SkippedNonCoprime".to_string(), |o| o.to_string());
            rows.push(StabilityRow {
                set,
                n,
                l,
                m: scan.m,
                outcome: name(entry.verdict.as_ref().map(|v| v.outcome)),
                expected: name(entry.expected),
                witness: entry.verdict.as_ref().and_then(|v| v.witness),
                status: if entry.is_violation() && !scan.exploratory {
                    VIOLATION
                } else {
                    OK
                }
                .to_string(),
            });
        }
    }
    Ok(rows)
}

/// Per-`(l, n)` summary of a stability scan, for the `stability` command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilitySummary {
    pub schema: u32,
    pub l: u64,
    pub n: u64,
    pub m: u64,
    pub exploratory: bool,
    pub enumerated: u64,
    pub skipped_non_coprime: u64,
    pub holds: u64,
    pub fails_head_family: u64,
    pub fails_tail_family: u64,
    pub fails_unexpected: u64,
    /// Failing sets in enumeration order.
    pub failures: Vec<StabilityRow>,
    pub violations: Vec<String>,
}

/// Stability scans over the selected `(l, n)` pairs, one summary each.
pub fn run_stability(options: &ScanOptions) -> Result<(Vec<StabilitySummary>, RunManifest)> {
    let threads = parallel::resolve_threads(options.threads);
    let mut manifest = RunManifest::start("stability", threads);
    for (key, value) in [("l", options.l), ("l_max", options.l_max), ("n", options.n), ("m", options.m)] {
        if let Some(v) = value {
            manifest.param(key, v);
        }
    }
    manifest.param("exploratory", options.exploratory);
    let mut summaries = Vec::new();
    for (l, n) in stability_pairs(options)? {
        let single = ScanOptions {
            l: Some(l),
            l_max: None,
            n: Some(n),
            ..options.clone()
        };
        let rows = stability_rows(&single, threads)?;
        let m = rows.first().map_or(0, |r| r.m);
        let count = |name: &str| rows.iter().filter(|r| r.outcome == name).count() as u64;
        let violations: Vec<String> = rows
            .iter()
            .filter(|r| r.status == VIOLATION)
            .map(|r| format!("{{{}}}: expected {}, observed {}", r.set, r.expected, r.outcome))
            .collect();
        let summary = StabilitySummary {
            schema: SCHEMA_VERSION,
            l,
            n,
            m,
            exploratory: options.exploratory,
            enumerated: rows.len() as u64,
            skipped_non_coprime: count("SkippedNonCoprime"),
            holds: count("Holds"),
            fails_head_family: count("FailsHeadFamily"),
            fails_tail_family: count("FailsTailFamily"),
            fails_unexpected: count("FailsUnexpected"),
            failures: rows
                .iter()
                .filter(|r| r.outcome.starts_with("Fails"))
                .cloned()
                .collect(),
            violations,
        };
        manifest.count("enumerated", summary.enumerated);
        manifest.count("failures", summary.failures.len() as u64);
        manifest
            .violations
            .extend(summary.violations.iter().map(|v| format!("l = {l}, n = {n}: {v}")));
        summaries.push(summary);
    }
    manifest.finish();
    Ok((summaries, manifest))
}
