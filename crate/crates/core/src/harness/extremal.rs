use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{bits, RunManifest, SCHEMA_VERSION};
use crate::error::Result;
use crate::intset::GeneratorSet;
use crate::parallel;
use crate::structure::{progression_plus_block, progression_plus_point, SetAnalysis};

#[derive(Clone, Debug)]
pub struct ExtremalOptions {
    /// Largest diameter `l` (point family) or product `sd` (block family).
    pub l_max: u64,
    /// Verdicts are taken for `m` in `[M, M + span]`.
    pub span: u64,
    pub threads: Option<usize>,
}

impl Default for ExtremalOptions {
    fn default() -> Self {
        Self {
            l_max: 60,
            span: 5,
            threads: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalRow {
    /// `point` for `{0, d, ..., l} ∪ {l - 1}`, `block` for the `(s, d, t)` family.
    pub family: String,
    pub l: u64,
    pub d: u64,
    pub s: Option<u64>,
    pub t: Option<u64>,
    pub set: String,
    pub n: u64,
    pub k: u64,
    #[serde(rename = "M")]
    pub threshold: u64,
    pub delta: u64,
    pub frobenius: i64,
    pub expected_frobenius: i64,
    pub holds: String,
    pub tight: String,
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalReport {
    pub schema: u32,
    pub rows: Vec<ExtremalRow>,
    pub violations: Vec<String>,
}

impl ExtremalReport {
    pub fn exit_code(&self) -> u8 {
        u8::from(!self.violations.is_empty())
    }
}

enum Family {
    Point { l: u64, d: u64 },
    Block { s: u64, d: u64, t: u64 },
}

/// Parameter grid: every `(l, d)` with `d | l`, `2 <= d <= l/2`, `l <= l_max`,
/// then every valid `(s, d, t)` with `sd <= l_max`.
fn grid(l_max: u64) -> Vec<Family> {
    let mut out = Vec::new();
    for l in 4..=l_max {
        for d in (2..=l / 2).filter(|d| l % d == 0) {
            out.push(Family::Point { l, d });
        }
    }
    for s in 2..=l_max / 2 {
        for d in 2..=l_max / s {
            for t in (1..s).filter(|t| d * t < s + t) {
                out.push(Family::Block { s, d, t });
            }
        }
    }
    out
}

/// Builds both families over the grid and checks that the gap-length bound
/// is attained, that `max(E)` matches its closed form, and that `k = d - 1`.
pub fn run_extremal(options: &ExtremalOptions) -> Result<(ExtremalReport, RunManifest)> {
    let threads = parallel::resolve_threads(options.threads);
    let mut manifest = RunManifest::start("extremal", threads);
    manifest.param("l_max", options.l_max).param("span", options.span);
    let families = grid(options.l_max);
    let rows = parallel::install(threads, || {
        families
            .par_iter()
            .map(|f| row(f, options.span))
            .collect::<Result<Vec<_>>>()
    })?;
    let violations: Vec<String> = rows
        .iter()
        .filter(|r| r.status != "ok")
        .map(|r| format!("{} family {{{}}}: {}", r.family, r.set, r.status))
        .collect();
    for r in &rows {
        manifest.count(&r.family, 1);
    }
    manifest.violations = violations.clone();
    manifest.finish();
    let report = ExtremalReport {
        schema: SCHEMA_VERSION,
        rows,
        violations,
    };
    Ok((report, manifest))
}

fn row(family: &Family, span: u64) -> Result<ExtremalRow> {
    let (name, a, d, s, t, expected) = match *family {
        Family::Point { l, d } => {
            let a = progression_plus_point(l, d)?;
            ("point", a, d, None, None, ((d - 1) * (l - 2)) as i64 - 1)
        }
        Family::Block { s, d, t } => {
            let a = progression_plus_block(s, d, t)?;
            ("block", a, d, Some(s), Some(t), ((d - 1) * ((s - t) * d - 2)) as i64 - 1)
        }
    };
    let analysis = SetAnalysis::new(&a);
    let p = analysis.shape;
    let verdicts = (p.threshold..=p.threshold + span)
        .map(|m| analysis.verdict(m))
        .collect::<Result<Vec<_>>>()?;
    let mut problems = Vec::new();
    if verdicts.iter().any(|v| !v.holds) {
        problems.push("identity fails");
    }
    if verdicts.iter().any(|v| !v.tight) {
        problems.push("bound not attained");
    }
    if analysis.gaps.frobenius != expected {
        problems.push("max(E) differs from closed form");
    }
    if p.k != d - 1 {
        problems.push("k differs from d - 1");
    }
    Ok(ExtremalRow {
        family: name.to_string(),
        l: a.l(),
        d,
        s,
        t,
        set: a.literal(),
        n: a.n(),
        k: p.k,
        threshold: p.threshold,
        delta: p.delta,
        frobenius: analysis.gaps.frobenius,
        expected_frobenius: expected,
        holds: bits(verdicts.iter().map(|v| v.holds)),
        tight: bits(verdicts.iter().map(|v| v.tight)),
        status: if problems.is_empty() {
            "ok".to_string()
        } else {
            problems.join("; ")
        },
    })
}

/// Convenience for callers that only need the family members.
pub fn family_sets(l_max: u64) -> Result<Vec<GeneratorSet>> {
    grid(l_max)
        .into_iter()
        .map(|f| match f {
            Family::Point { l, d } => progression_plus_point(l, d),
            Family::Block { s, d, t } => progression_plus_block(s, d, t),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grid_is_tight() {
        let (report, manifest) = run_extremal(&ExtremalOptions {
            l_max: 20,
            ..Default::default()
        })
        .unwrap();
        assert!(report.violations.is_empty(), "{:?}", report.violations);
        assert_eq!(manifest.exit_code(), 0);
        let point = report.rows.iter().find(|r| r.family == "point" && r.l == 6 && r.d == 2).unwrap();
        assert_eq!(point.set, "0,2,4,5,6");
        assert_eq!(point.frobenius, 3);
        assert!(report.rows.iter().any(|r| r.family == "block"));
    }

    #[test]
    fn grid_parameters_are_valid() {
        for f in grid(30) {
            match f {
                Family::Point { l, d } => assert!(l % d == 0 && 2 * d <= l),
                Family::Block { s, d, t } => assert!(s * d <= 30 && t < s && d * t < s + t),
            }
        }
        assert_eq!(family_sets(30).unwrap().len(), grid(30).len());
    }
}
