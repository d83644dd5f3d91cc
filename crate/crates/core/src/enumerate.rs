//! Exhaustive enumeration of generator sets by diameter and size.
//!
//! Candidates with diameter `l` and size `n` are `{0} ∪ I ∪ {l}` for every
//! `(n - 2)`-subset `I` of `[1, l - 1]`. Subsets are visited in colexicographic
//! order (numeric order of their bitmasks), so every scan sees the same
//! sequence regardless of thread count.

use crate::intset::{gcd, GeneratorSet};

/// Largest diameter the bitmask enumeration supports.
pub const MAX_DIAMETER: u64 = 64;

/// Every `{0} ∪ I ∪ {l}` with `|I| = n - 2`, including sets whose gcd
/// exceeds 1.
pub fn candidates(l: u64, n: u64) -> Candidates {
    assert!(l <= MAX_DIAMETER, "diameter {l} above {MAX_DIAMETER}");
    let width = l.saturating_sub(1);
    let choose = n.saturating_sub(2);
    let next = if n < 3 || choose > width {
        None
    } else {
        Some(if choose == 0 { 0 } else { u64::MAX >> (64 - choose) })
    };
    Candidates { l, width, next }
}

pub struct Candidates {
    l: u64,
    width: u64,
    next: Option<u64>,
}

impl Iterator for Candidates {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let mask = self.next?;
        self.next = next_combination(mask).filter(|&m| self.width == 64 || m >> self.width == 0);
        let mut elements = vec![0];
        let mut bits = mask;
        while bits != 0 {
            elements.push(u64::from(bits.trailing_zeros()) + 1);
            bits &= bits - 1;
        }
        elements.push(self.l);
        Some(elements)
    }
}

/// Gosper's hack: the next larger integer with the same popcount.
fn next_combination(x: u64) -> Option<u64> {
    if x == 0 {
        return None;
    }
    let low = x & x.wrapping_neg();
    let ripple = x.checked_add(low)?;
    Some((((ripple ^ x) >> 2) / low) | ripple)
}

pub fn is_coprime(elements: &[u64]) -> bool {
    elements.iter().fold(0, |g, &a| gcd(g, a)) == 1
}

/// Generator sets with diameter `l` and size `n`.
pub fn generator_sets(l: u64, n: u64) -> impl Iterator<Item = GeneratorSet> {
    candidates(l, n)
        .filter(|c| is_coprime(c))
        .map(|c| GeneratorSet::new(c).expect("candidate is normalized"))
}

/// Every generator set with diameter at most `l_max`, ordered by `l`, then
/// `n`, then colex.
pub fn generator_sets_up_to(l_max: u64) -> impl Iterator<Item = GeneratorSet> {
    (2..=l_max).flat_map(|l| (3..=l + 1).flat_map(move |n| generator_sets(l, n)))
}

/// `n` choose `k`, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u128;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    acc as u64
}
