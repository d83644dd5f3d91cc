//! The identity `mA = [0, ml] \ (E ∪ (ml - E'))` below the threshold `M`.
//!
//! For `n >= 6` and `m` at least [`stab_threshold`], the identity holds
//! unless `A` lies in one of two explicit families:
//!
//! * head family: `{0, 1} ⊆ A ⊆ {0, 1} ∪ [m + 2, l]`, failing at `m + 1`;
//! * tail family: `{l - 1, l} ⊆ A ⊆ [0, l - m - 2] ∪ {l - 1, l}`, failing
//!   at `ml - m - 1`.
//!
//! [`stability_scan`] runs the classification over every set with a given
//! diameter and size.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{candidates, is_coprime};
use crate::error::{Error, Result};
use crate::intset::{m_fold, GeneratorSet};
use crate::parallel;
use crate::structure::SetAnalysis;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StabilityOutcome {
    Holds,
    FailsHeadFamily,
    FailsTailFamily,
    FailsUnexpected,
}

impl StabilityOutcome {
    pub fn is_failure(self) -> bool {
        self != StabilityOutcome::Holds
    }

    /// The outcome for `l - A`.
    pub fn mirrored(self) -> Self {
        match self {
            StabilityOutcome::FailsHeadFamily => StabilityOutcome::FailsTailFamily,
            StabilityOutcome::FailsTailFamily => StabilityOutcome::FailsHeadFamily,
            other => other,
        }
    }
}

impl fmt::Display for StabilityOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            StabilityOutcome::Holds => "Holds",
            StabilityOutcome::FailsHeadFamily => "FailsHeadFamily",
            StabilityOutcome::FailsTailFamily => "FailsTailFamily",
            StabilityOutcome::FailsUnexpected => "FailsUnexpected",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub m: u64,
    pub outcome: StabilityOutcome,
    /// `m + 1` for the head family, `ml - m - 1` for the tail family, the
    /// least mismatch for an unexpected failure.
    pub witness: Option<u64>,
}

/// Least `m` with `m >= (2l - 3n + 9)/2` and `m >= 2(l - n + 2)/3`.
pub fn stab_threshold(l: u64, n: u64) -> Result<u64> {
    if n < 6 || l <= n {
        return Err(Error::InvalidArgs(format!(
            "stability threshold needs n >= 6 and l > n, got l = {l}, n = {n}"
        )));
    }
    // Both rational bounds lie strictly below M; the ceiling may reach it.
    let big_m = (l - n + 2) as i64;
    let (li, ni) = (l as i64, n as i64);
    assert!(
        2 * li - 3 * ni + 9 < 2 * big_m && 2 * big_m < 3 * big_m,
        "threshold bounds not below M for l = {l}, n = {n}"
    );
    Ok(raw_threshold(l, n))
}

/// The same two ceilings without the size preconditions, floored at 1.
fn raw_threshold(l: u64, n: u64) -> u64 {
    let (l, n) = (l as i64, n as i64);
    let first = div_ceil(2 * l - 3 * n + 9, 2);
    let second = div_ceil(2 * (l - n + 2), 3);
    first.max(second).max(1) as u64
}

fn div_ceil(num: i64, den: i64) -> i64 {
    num.div_euclid(den) + i64::from(num.rem_euclid(den) != 0)
}

/// `{0, 1} ⊆ A ⊆ {0, 1} ∪ [m + 2, l]`.
pub fn in_head_family(a: &GeneratorSet, m: u64) -> bool {
    a.contains(1) && !a.elements().iter().any(|&x| (2..=m + 1).contains(&x))
}

/// `{l - 1, l} ⊆ A ⊆ [0, l - m - 2] ∪ {l - 1, l}`.
pub fn in_tail_family(a: &GeneratorSet, m: u64) -> bool {
    in_head_family(&a.reflect(), m)
}

/// Classifies `A` at `m` and checks the observed behaviour against the
/// classification.
pub fn stability_check(a: &GeneratorSet, m: u64) -> Result<StabilityVerdict> {
    let threshold = stab_threshold(a.l(), a.n())?;
    if m < threshold {
        return Err(Error::InvalidArgs(format!(
            "m = {m} below the stability threshold {threshold}"
        )));
    }
    classify(&SetAnalysis::new(a), m, true)
}

/// Outcome predicted by family membership alone.
pub fn expected_outcome(a: &GeneratorSet, m: u64) -> Result<StabilityOutcome> {
    match (in_head_family(a, m), in_tail_family(a, m)) {
        (true, true) => Err(Error::Consistency(format!(
            "{a} matches both the head and the tail family at m = {m}"
        ))),
        (true, false) => Ok(StabilityOutcome::FailsHeadFamily),
        (false, true) => Ok(StabilityOutcome::FailsTailFamily),
        (false, false) => Ok(StabilityOutcome::Holds),
    }
}

/// Observed outcome; with `judge`, any disagreement with the predicted
/// family membership is a [`Error::TheoremViolation`].
fn classify(analysis: &SetAnalysis, m: u64, judge: bool) -> Result<StabilityVerdict> {
    let a = &analysis.set;
    let expected = expected_outcome(a, m)?;
    let (head, tail) = (
        expected == StabilityOutcome::FailsHeadFamily,
        expected == StabilityOutcome::FailsTailFamily,
    );
    let sumset = m_fold(a, m)?;
    let verdict = analysis.verdict_for(m, &sumset);
    let top = m * a.l();

    // A family failure is confirmed when its point lies in the predicted set
    // but not in mA.
    let head_fails = || {
        let w = m + 1;
        !sumset.contains(w) && !analysis.gaps.contains(w) && !analysis.reflected_gaps.contains(top - w)
    };
    let tail_fails = || {
        let w = top - m - 1;
        !sumset.contains(w) && !analysis.gaps.contains(w) && !analysis.reflected_gaps.contains(m + 1)
    };

    let (outcome, witness) = if verdict.holds {
        (StabilityOutcome::Holds, None)
    } else if head_fails() && (head || !tail) {
        (StabilityOutcome::FailsHeadFamily, Some(m + 1))
    } else if tail_fails() {
        (StabilityOutcome::FailsTailFamily, Some(top - m - 1))
    } else {
        (StabilityOutcome::FailsUnexpected, verdict.witness)
    };
    if judge && outcome != expected {
        return Err(Error::TheoremViolation(format!(
            "{a} at m = {m}: expected {expected}, observed {outcome} (witness {:?})",
            verdict.witness
        )));
    }
    Ok(StabilityVerdict { m, outcome, witness })
}

#[derive(Clone, Debug, Default)]
pub struct StabilityScanOptions {
    /// Defaults to [`stab_threshold`].
    pub m: Option<u64>,
    pub threads: Option<usize>,
    /// Allows `n = 5` and `m` below the threshold; failures are reported
    /// but not judged.
    pub exploratory: bool,
}

/// One enumerated candidate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanEntry {
    pub index: u64,
    pub elements: Vec<u64>,
    /// `None` when the candidate has gcd > 1 and was skipped.
    pub verdict: Option<StabilityVerdict>,
    /// Outcome predicted by family membership.
    pub expected: Option<StabilityOutcome>,
}

impl ScanEntry {
    /// Whether the observed outcome contradicts the prediction.
    pub fn is_violation(&self) -> bool {
        match (&self.verdict, self.expected) {
            (Some(v), Some(e)) => v.outcome != e,
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityScan {
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
    pub entries: Vec<ScanEntry>,
}

impl StabilityScan {
    pub fn failures(&self) -> impl Iterator<Item = &ScanEntry> {
        self.entries
            .iter()
            .filter(|e| e.verdict.as_ref().is_some_and(|v| v.outcome.is_failure()))
    }

    pub fn failure_count(&self) -> u64 {
        self.fails_head_family + self.fails_tail_family + self.fails_unexpected
    }

    pub fn violations(&self) -> impl Iterator<Item = &ScanEntry> {
        self.entries.iter().filter(|e| e.is_violation())
    }
}

/// Classifies every set with diameter `l` and size `n` at a fixed `m`.
///
/// Outside exploratory mode, any set whose observed outcome contradicts its
/// family membership makes the scan fail with [`Error::TheoremViolation`]
/// listing every such set.
pub fn stability_scan(l: u64, n: u64, options: &StabilityScanOptions) -> Result<StabilityScan> {
    let scan = stability_scan_unjudged(l, n, options)?;
    if scan.exploratory {
        return Ok(scan);
    }
    let violations: Vec<String> = scan
        .violations()
        .map(|e| {
            let v = e.verdict.as_ref().expect("violations have verdicts");
            format!(
                "{{{}}}: expected {}, observed {} (witness {:?})",
                crate::intset::join(e.elements.iter()),
                e.expected.expect("violations have predictions"),
                v.outcome,
                v.witness
            )
        })
        .collect();
    if violations.is_empty() {
        Ok(scan)
    } else {
        Err(Error::TheoremViolation(format!(
            "l = {l}, n = {n}, m = {}: {}",
            scan.m,
            violations.join("; ")
        )))
    }
}

/// Same as [`stability_scan`] but never fails on a contradiction; check
/// [`StabilityScan::violations`] instead.
pub fn stability_scan_unjudged(l: u64, n: u64, options: &StabilityScanOptions) -> Result<StabilityScan> {
    let m = if options.exploratory {
        if n < 3 || l < n {
            return Err(Error::InvalidArgs(format!("need 3 <= n <= l, got l = {l}, n = {n}")));
        }
        options.m.unwrap_or_else(|| raw_threshold(l, n))
    } else {
        let threshold = stab_threshold(l, n)?;
        let m = options.m.unwrap_or(threshold);
        if m < threshold {
            return Err(Error::InvalidArgs(format!(
                "m = {m} below the stability threshold {threshold}"
            )));
        }
        m
    };
    if m == 0 {
        return Err(Error::InvalidArgs("m must be at least 1".into()));
    }
    let pending: Vec<Vec<u64>> = candidates(l, n).collect();
    let threads = parallel::resolve_threads(options.threads);
    let entries = parallel::install(threads, || {
        pending
            .into_par_iter()
            .enumerate()
            .map(|(index, elements)| {
                let (verdict, expected) = if is_coprime(&elements) {
                    let a = GeneratorSet::new(elements.clone())?;
                    let verdict = classify(&SetAnalysis::new(&a), m, false)?;
                    (Some(verdict), Some(expected_outcome(&a, m)?))
                } else {
                    (None, None)
                };
                Ok(ScanEntry {
                    index: index as u64,
                    elements,
                    verdict,
                    expected,
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;

    let mut scan = StabilityScan {
        l,
        n,
        m,
        exploratory: options.exploratory,
        enumerated: entries.len() as u64,
        skipped_non_coprime: 0,
        holds: 0,
        fails_head_family: 0,
        fails_tail_family: 0,
        fails_unexpected: 0,
        entries: Vec::new(),
    };
    for entry in &entries {
        match entry.verdict.as_ref().map(|v| v.outcome) {
            None => scan.skipped_non_coprime += 1,
            Some(StabilityOutcome::Holds) => scan.holds += 1,
            Some(StabilityOutcome::FailsHeadFamily) => scan.fails_head_family += 1,
            Some(StabilityOutcome::FailsTailFamily) => scan.fails_tail_family += 1,
            Some(StabilityOutcome::FailsUnexpected) => scan.fails_unexpected += 1,
        }
    }
    scan.entries = entries;
    Ok(scan)
}
