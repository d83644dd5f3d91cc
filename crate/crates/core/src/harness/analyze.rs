use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{parse_set, SCHEMA_VERSION};
use crate::error::{Error, Result};
use crate::intset::{m_fold, GeneratorSet};
use crate::parallel;
use crate::semigroup::GapData;
use crate::stability::{stab_threshold, stability_check, StabilityVerdict};
use crate::structure::{Decomposition, SetAnalysis, ShapeParams, StructureVerdict};
use crate::toolbox::{dixmier_interval_check, freiman_check};

#[derive(Clone, Debug, Default)]
pub struct AnalyzeOptions {
    /// Single `m`; defaults to `M`.
    pub m: Option<u64>,
    /// Verdicts for every `m` in `[1, m_max]` instead of a single `m`.
    pub m_max: Option<u64>,
    pub strict_normalize: bool,
    pub threads: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToolboxSummary {
    pub freiman: bool,
    /// Checked at the largest analysed `m`.
    pub dixmier_interval: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalyzeReport {
    pub schema: u32,
    pub input: String,
    pub set: GeneratorSet,
    pub n: u64,
    pub l: u64,
    pub shape: ShapeParams,
    pub gaps: GapData,
    pub reflected_gaps: GapData,
    pub verdicts: Vec<StructureVerdict>,
    /// Least `m` from which every analysed verdict holds, when `m_max` was given.
    pub stable_from: Option<u64>,
    pub decomposition: Decomposition,
    pub toolbox: ToolboxSummary,
    /// Present when `n >= 6`, `l > n` and `m` reaches the stability threshold.
    pub stability: Option<StabilityVerdict>,
    pub violations: Vec<String>,
}

impl AnalyzeReport {
    pub fn exit_code(&self) -> u8 {
        u8::from(!self.violations.is_empty())
    }
}

/// Full single-set report. Theorem violations are collected in
/// [`AnalyzeReport::violations`]; parse and argument errors are returned.
pub fn run_analyze(literal: &str, options: &AnalyzeOptions) -> Result<AnalyzeReport> {
    let a = parse_set(literal, options.strict_normalize)?;
    let analysis = SetAnalysis::new(&a);
    let threshold = analysis.shape.threshold;
    if options.m == Some(0) || options.m_max == Some(0) {
        return Err(Error::InvalidArgs("m must be at least 1".into()));
    }
    if options.m.is_some() && options.m_max.is_some() {
        return Err(Error::InvalidArgs("give either m or m_max, not both".into()));
    }
    let ms: Vec<u64> = match options.m_max {
        Some(m_max) => (1..=m_max).collect(),
        None => vec![options.m.unwrap_or(threshold)],
    };
    let top_m = *ms.last().expect("at least one m");

    let mut violations = Vec::new();
    let threads = parallel::resolve_threads(options.threads);
    let verdicts = parallel::install(threads, || {
        ms.par_iter()
            .map(|&m| analysis.verdict(m))
            .collect::<Result<Vec<_>>>()
    })?;
    for v in &verdicts {
        record(&mut violations, analysis.judge(v))?;
    }
    let stable_from = options.m_max.map(|m_max| {
        let holding = verdicts.iter().rev().take_while(|v| v.holds).count() as u64;
        m_max - holding + 1
    });

    let decomposition_m = if options.m_max.is_some() { threshold } else { top_m };
    let decomposition = analysis.pieces(decomposition_m);
    if decomposition_m >= threshold {
        let sumset = m_fold(&a, decomposition_m)?;
        record(&mut violations, analysis.check_decomposition(&decomposition, &sumset))?;
    }

    let freiman = freiman_check(&a);
    if !freiman {
        violations.push(format!("{a}: |2A| below min(l, 2n - 3) + n"));
    }
    let dixmier_interval = dixmier_interval_check(&a, top_m)?;
    if !dixmier_interval {
        violations.push(format!("{a}: Frobenius or block bound fails at m = {top_m}"));
    }

    let stability = match stab_threshold(a.l(), a.n()) {
        Ok(t) if top_m >= t => record(&mut violations, stability_check(&a, top_m))?,
        _ => None,
    };

    Ok(AnalyzeReport {
        schema: SCHEMA_VERSION,
        input: literal.trim().to_string(),
        n: a.n(),
        l: a.l(),
        shape: analysis.shape,
        gaps: analysis.gaps.clone(),
        reflected_gaps: analysis.reflected_gaps.clone(),
        set: a,
        verdicts,
        stable_from,
        decomposition,
        toolbox: ToolboxSummary { freiman, dixmier_interval },
        stability,
        violations,
    })
}

/// Moves a theorem violation into `violations`; other errors propagate.
fn record<T>(violations: &mut Vec<String>, result: Result<T>) -> Result<Option<T>> {
    match result {
        Ok(value) => Ok(Some(value)),
        Err(Error::TheoremViolation(msg) | Error::Consistency(msg)) => {
            violations.push(msg);
            Ok(None)
        }
        Err(e) => Err(e),
    }
}
