//! Head / interval / tail structure of `mA`.
//!
//! For `m >= M = l - n + 2`, the sumset `mA` equals `[0, ml]` with the gaps
//! `E` of `A` and the reflected gaps `ml - E'` of `l - A` removed, and the
//! block `[max(E) + 1, ml - max(E') - 1]` between them has length at least
//! `(m - M + 1)l + Δ`. This module computes the shape parameters, checks the
//! identity against the exact sumset, and builds the two families of sets
//! for which the length bound is attained.
//!
//! The `n = 3` case of the identity rests on a separate, older argument
//! rather than the general proof; it is checked here like any other size.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intset::{m_fold, DenseSet, GeneratorSet};
use crate::semigroup::{exceptional_set, GapData};

/// `l - 1 = k(n - 2) + r`, the threshold `M = l - n + 2` and the surplus `Δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeParams {
    pub k: u64,
    pub r: u64,
    #[serde(rename = "M")]
    pub threshold: u64,
    pub delta: u64,
}

impl ShapeParams {
    /// Parameters for diameter `l` and size `n`; they depend on nothing else.
    pub fn for_size(l: u64, n: u64) -> Result<Self> {
        if n < 3 || n > l + 1 {
            return Err(Error::InvalidArgs(format!(
                "need 3 <= n <= l + 1, got l = {l}, n = {n}"
            )));
        }
        let (k, r) = ((l - 1) / (n - 2), (l - 1) % (n - 2));
        let delta = l * (k - 1) * (n - 3) + r * k * (n - 3) + r * r + k + 1;
        Ok(Self {
            k,
            r,
            threshold: l + 2 - n,
            delta,
        })
    }

    /// Whether `Δ > (1 - 1/k - 1/(n-2)) l²`, compared exactly after clearing
    /// denominators.
    pub fn delta_exceeds_quadratic(&self, l: u64, n: u64) -> bool {
        let (k, q) = (i128::from(self.k), i128::from(n) - 2);
        let l = i128::from(l);
        i128::from(self.delta) * k * q > (k * q - q - k) * l * l
    }
}

pub fn shape_params(a: &GeneratorSet) -> ShapeParams {
    ShapeParams::for_size(a.l(), a.n()).expect("generator sets satisfy 3 <= n <= l + 1")
}

/// Outcome of comparing `mA` with `[0, ml] \ (E ∪ (ml - E'))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureVerdict {
    pub m: u64,
    pub holds: bool,
    /// Least element of the symmetric difference, when there is one.
    pub witness: Option<u64>,
    /// `ml - max(E) - max(E')`, with `max(∅) = -1`.
    pub gap_length: i64,
    /// `(m - M + 1)l + Δ`.
    pub bound: i64,
    pub tight: bool,
}

/// `mA` split into head, central block and shifted tail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub m: u64,
    /// `S(A) ∩ [0, max(E)]`.
    pub head: DenseSet,
    pub run_lo: i64,
    pub run_hi: i64,
    /// `ml - T`.
    pub tail: DenseSet,
    /// `T = S(l - A) ∩ [0, max(E')]`, independent of `m`.
    #[serde(rename = "tail_offsets")]
    pub tail_base: DenseSet,
}

/// Per-m verdicts from 1 up to some `m_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdScan {
    pub verdicts: Vec<StructureVerdict>,
    /// Least `m0` such that the identity holds for every `m` in `[m0, m_max]`.
    pub stable_from: u64,
}

/// Everything about a set that does not depend on `m`, computed once.
#[derive(Clone, Debug)]
pub struct SetAnalysis {
    pub set: GeneratorSet,
    pub shape: ShapeParams,
    pub gaps: GapData,
    /// Gaps of `l - A`.
    pub reflected_gaps: GapData,
}

impl SetAnalysis {
    pub fn new(a: &GeneratorSet) -> Self {
        Self {
            set: a.clone(),
            shape: shape_params(a),
            gaps: exceptional_set(a),
            reflected_gaps: exceptional_set(&a.reflect()),
        }
    }

    /// The predicted sumset `[0, ml] \ (E ∪ (ml - E'))`.
    pub fn predicted(&self, m: u64) -> DenseSet {
        let top = m * self.set.l();
        let mut out = DenseSet::interval(0, top);
        for &z in &self.gaps.gaps {
            out.remove(z);
        }
        for &z in self.reflected_gaps.gaps.iter().take_while(|&&z| z <= top) {
            out.remove(top - z);
        }
        out
    }

    pub fn gap_length(&self, m: u64) -> i64 {
        (m * self.set.l()) as i64 - self.gaps.frobenius - self.reflected_gaps.frobenius
    }

    pub fn bound(&self, m: u64) -> i64 {
        (m as i64 - self.shape.threshold as i64 + 1) * self.set.l() as i64 + self.shape.delta as i64
    }

    /// Verdict for `m`, without judging it against the theorem.
    pub fn verdict(&self, m: u64) -> Result<StructureVerdict> {
        let sumset = m_fold(&self.set, m)?;
        Ok(self.verdict_for(m, &sumset))
    }

    /// Verdict for `m` given a precomputed `mA`.
    pub fn verdict_for(&self, m: u64, sumset: &DenseSet) -> StructureVerdict {
        let witness = sumset.first_difference(&self.predicted(m));
        let (gap_length, bound) = (self.gap_length(m), self.bound(m));
        StructureVerdict {
            m,
            holds: witness.is_none(),
            witness,
            gap_length,
            bound,
            tight: gap_length == bound,
        }
    }

    /// Verdict for `m`, failing with [`Error::TheoremViolation`] when
    /// `m >= M` and either the identity or the length bound fails.
    pub fn check(&self, m: u64) -> Result<StructureVerdict> {
        let verdict = self.verdict(m)?;
        self.judge(&verdict)?;
        Ok(verdict)
    }

    /// Fails with [`Error::TheoremViolation`] when `v` contradicts the theorem.
    pub fn judge(&self, v: &StructureVerdict) -> Result<()> {
        if v.m < self.shape.threshold {
            return Ok(());
        }
        if let Some(w) = v.witness {
            return Err(Error::TheoremViolation(format!(
                "{}: m = {} >= M = {} but mA and the predicted set differ at {w}",
                self.set, v.m, self.shape.threshold
            )));
        }
        if v.gap_length < v.bound {
            return Err(Error::TheoremViolation(format!(
                "{}: m = {}: gap length {} below bound {}",
                self.set, v.m, v.gap_length, v.bound
            )));
        }
        Ok(())
    }

    /// The decomposition at `m`, verified against `mA` when `m >= M`.
    pub fn decompose(&self, m: u64) -> Result<Decomposition> {
        let decomposition = self.pieces(m);
        if m >= self.shape.threshold {
            self.check_decomposition(&decomposition, &m_fold(&self.set, m)?)?;
        }
        Ok(decomposition)
    }

    /// Head, block and tail at `m`, without comparing them to `mA`.
    pub fn pieces(&self, m: u64) -> Decomposition {
        let top = m * self.set.l();
        let (e, e_ref) = (self.gaps.frobenius, self.reflected_gaps.frobenius);
        let head = complement_up_to(&self.gaps, e);
        let tail_base = complement_up_to(&self.reflected_gaps, e_ref);
        let tail = tail_base
            .iter()
            .filter(|&z| z <= top)
            .map(|z| top - z)
            .collect::<DenseSet>();
        Decomposition {
            m,
            head,
            run_lo: e + 1,
            run_hi: top as i64 - e_ref - 1,
            tail,
            tail_base,
        }
    }

    /// Fails with [`Error::TheoremViolation`] unless the block is nonempty,
    /// head and tail are disjoint, and the three pieces make up `sumset`.
    pub fn check_decomposition(&self, d: &Decomposition, sumset: &DenseSet) -> Result<()> {
        let fail = |what: String| {
            Err(Error::TheoremViolation(format!(
                "{}: decomposition at m = {}: {what}",
                self.set, d.m
            )))
        };
        if d.run_lo > d.run_hi {
            return fail(format!("empty block [{}, {}]", d.run_lo, d.run_hi));
        }
        if let (Some(h), Some(t)) = (d.head.max(), d.tail.min()) {
            if h >= t {
                return fail(format!("head reaches {h}, tail starts at {t}"));
            }
        }
        let mut union = d.head.union(&d.tail);
        union = union.union(&DenseSet::interval(d.run_lo as u64, d.run_hi as u64));
        if let Some(w) = union.first_difference(sumset) {
            return fail(format!("union differs from mA at {w}"));
        }
        Ok(())
    }
}

/// `[0, top] \ gaps` as a dense set; empty when `top < 0`.
fn complement_up_to(gaps: &GapData, top: i64) -> DenseSet {
    if top < 0 {
        return DenseSet::empty(0);
    }
    let mut out = DenseSet::interval(0, top as u64);
    for &z in &gaps.gaps {
        out.remove(z);
    }
    out
}

/// Compares `mA` with the predicted set; errors on a violation at `m >= M`.
pub fn structure_check(a: &GeneratorSet, m: u64) -> Result<StructureVerdict> {
    SetAnalysis::new(a).check(m)
}

pub fn decompose(a: &GeneratorSet, m: u64) -> Result<Decomposition> {
    SetAnalysis::new(a).decompose(m)
}

/// Verdicts for every `m` in `[1, m_max]`, computed in parallel.
pub fn threshold_scan(a: &GeneratorSet, m_max: u64) -> Result<ThresholdScan> {
    let analysis = SetAnalysis::new(a);
    if m_max < analysis.shape.threshold {
        return Err(Error::InvalidArgs(format!(
            "m_max = {m_max} is below M = {}",
            analysis.shape.threshold
        )));
    }
    let verdicts = (1..=m_max)
        .into_par_iter()
        .map(|m| analysis.check(m))
        .collect::<Result<Vec<_>>>()?;
    let failing_tail = verdicts.iter().rev().take_while(|v| v.holds).count() as u64;
    Ok(ThresholdScan {
        stable_from: m_max - failing_tail + 1,
        verdicts,
    })
}

/// `{0, d, 2d, ..., l} ∪ {l - 1}` for a nontrivial divisor `d` of `l`.
pub fn progression_plus_point(l: u64, d: u64) -> Result<GeneratorSet> {
    if d <= 1 || d >= l {
        return Err(Error::DegenerateFamily { l, d });
    }
    if !l.is_multiple_of(d) {
        return Err(Error::NotDivisible { l, d });
    }
    let mut elements: Vec<u64> = (0..=l / d).map(|i| i * d).collect();
    elements.insert(elements.len() - 1, l - 1);
    GeneratorSet::new(elements)
}

/// `{0, d, ..., sd} ∪ {sd - 1 - td, sd - 1 - (t-1)d, ..., sd - 1}` for
/// positive `s, d, t` with `t < s` and `2 <= d < s/t + 1`.
pub fn progression_plus_block(s: u64, d: u64, t: u64) -> Result<GeneratorSet> {
    if s == 0 || t == 0 {
        return Err(Error::ConstraintViolation("s >= 1 and t >= 1"));
    }
    if t >= s {
        return Err(Error::ConstraintViolation("t < s"));
    }
    if d < 2 {
        return Err(Error::ConstraintViolation("d >= 2"));
    }
    // d < s/t + 1  <=>  dt < s + t
    if d * t >= s + t {
        return Err(Error::ConstraintViolation("d < s/t + 1"));
    }
    let l = s * d;
    let mut elements: Vec<u64> = (0..=s)
        .map(|i| i * d)
        .chain((0..=t).map(|j| l - 1 - j * d))
        .collect();
    elements.sort_unstable();
    GeneratorSet::new(elements)
}
