//! The numerical semigroup `S(A)`, its gaps `E(A)` and the Frobenius number.
//!
//! Two independent routes are provided. [`exceptional_set`] closes a bitmap
//! under addition inside a window that is guaranteed to contain every gap;
//! [`frobenius_apery`] runs a shortest-path computation over residues modulo
//! the smallest nonzero generator and never touches a bitmap.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use crate::intset::{sumset_truncated, DenseSet, GeneratorSet};
use crate::structure::shape_params;

/// Gaps of `S(A)` together with the Frobenius number (`-1` when there are no
/// gaps).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GapData {
    pub gaps: Vec<u64>,
    pub frobenius: i64,
}

impl GapData {
    fn from_gaps(gaps: Vec<u64>) -> Self {
        let frobenius = gaps.last().map_or(-1, |&g| g as i64);
        Self { gaps, frobenius }
    }

    pub fn contains(&self, z: u64) -> bool {
        self.gaps.binary_search(&z).is_ok()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }
}

/// Upper end of the window that holds every gap: `k(l - n + r + 1)`.
///
/// The Frobenius number is at most one less than this.
pub fn gap_window(a: &GeneratorSet) -> u64 {
    let p = shape_params(a);
    p.k * (a.l() + 1 + p.r - a.n())
}

/// `S(A) ∩ [0, limit]`.
pub fn semigroup_members(a: &GeneratorSet, limit: u64) -> DenseSet {
    let mut closed = a.to_dense().truncated(limit);
    // Each pass doubles the number of summands covered.
    loop {
        let next = sumset_truncated(&closed, &closed, limit);
        if next == closed {
            return closed;
        }
        closed = next;
    }
}

/// The exceptional set `E(A)`.
pub fn exceptional_set(a: &GeneratorSet) -> GapData {
    if a.contains(1) {
        return GapData::from_gaps(Vec::new());
    }
    let window = gap_window(a);
    let smallest = a.min_positive();
    // `smallest` consecutive members from the window end on certify that
    // nothing beyond it is a gap.
    let limit = window + smallest - 1;
    let members = semigroup_members(a, limit);
    assert!(
        (window..=limit).all(|z| members.contains(z)),
        "gap window {window} too small for {a}"
    );
    let gaps = (1..window).filter(|&z| !members.contains(z)).collect();
    GapData::from_gaps(gaps)
}

/// Least member of `S(A)` in each residue class modulo the smallest nonzero
/// generator.
pub fn apery_set(a: &GeneratorSet) -> Vec<u64> {
    let modulus = a.min_positive();
    let mut least = vec![u64::MAX; modulus as usize];
    least[0] = 0;
    let mut queue = BinaryHeap::from([Reverse((0u64, 0u64))]);
    while let Some(Reverse((dist, residue))) = queue.pop() {
        if dist > least[residue as usize] {
            continue;
        }
        for &g in &a.elements()[2..] {
            let next = ((residue + g) % modulus) as usize;
            let candidate = dist + g;
            if candidate < least[next] {
                least[next] = candidate;
                queue.push(Reverse((candidate, next as u64)));
            }
        }
    }
    least
}

/// Frobenius number from the Apéry set: `max(apery) - min(A \ {0})`.
pub fn frobenius_apery(a: &GeneratorSet) -> i64 {
    if a.contains(1) {
        return -1;
    }
    let apery = apery_set(a);
    let top = apery.iter().copied().max().expect("modulus is at least 2");
    top as i64 - a.min_positive() as i64
}
