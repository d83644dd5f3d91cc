//! Brute-force checks of the supporting results used alongside the structure
//! theorem: sumset size bounds for integer sets, block and Frobenius bounds
//! for `mA`, zero-sum-free sequences in `Z/q`, small subsequence-sum
//! structure, and cyclic-group addition theorems.
//!
//! Each `*_check` returns whether the statement held on the given instance.
//! A `false` return is a counterexample to a published theorem and so
//! indicates a bug.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::intset::{gcd, longest_run, m_fold, sumset_truncated, DenseSet, GeneratorSet};
use crate::semigroup::exceptional_set;
use crate::structure::shape_params;

/// `|2A| >= min(l, 2n - 3) + n`.
pub fn freiman_check(a: &GeneratorSet) -> bool {
    let dense = a.to_dense();
    let doubled = sumset_truncated(&dense, &dense, 2 * a.l());
    doubled.len() >= a.l().min(2 * a.n() - 3) + a.n()
}

/// Frobenius bound `max(E) <= k(l - n + r + 1) - 1`; for `m >= 2k` the
/// interval `[kl - k(n-1-r), (m-k)l + k(n-1-r)]` lies in `mA`; for `m >= 3k`
/// `mA` has a block of at least `(m-k)l + k(n-1-r) + 1` consecutive integers.
pub fn dixmier_interval_check(a: &GeneratorSet, m: u64) -> Result<bool> {
    if m == 0 {
        return Err(Error::InvalidArgs("m must be at least 1".into()));
    }
    let p = shape_params(a);
    let (l, n) = (a.l() as i64, a.n() as i64);
    let (k, r) = (p.k as i64, p.r as i64);
    let frobenius = exceptional_set(a).frobenius;
    if frobenius > k * (l - n + r + 1) - 1 {
        return Ok(false);
    }
    if p.k * 2 > m {
        return Ok(true);
    }
    let sumset = m_fold(a, m)?;
    let m = m as i64;
    let spread = k * (n - 1 - r);
    let (lo, hi) = (k * l - spread, (m - k) * l + spread);
    if (lo..=hi).any(|z| !sumset.contains(z as u64)) {
        return Ok(false);
    }
    if 3 * k <= m {
        let (_, run) = longest_run(&sumset)?;
        if (run as i64) < (m - k) * l + spread + 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A sequence of nonzero residues modulo `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModSequence {
    modulus: u64,
    terms: Vec<u64>,
}

impl ModSequence {
    /// Reduces every term modulo `q`; a term divisible by `q` is rejected.
    pub fn new(modulus: u64, terms: impl IntoIterator<Item = u64>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidArgs(format!("modulus must be at least 2, got {modulus}")));
        }
        let terms: Vec<u64> = terms.into_iter().map(|t| t % modulus).collect();
        if terms.contains(&0) {
            return Err(Error::InvalidArgs("terms must be nonzero modulo q".into()));
        }
        Ok(Self { modulus, terms })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// No nonempty subsequence sums to 0 modulo `q`. Tracks reachable
/// nonempty-subsequence residues, one term at a time.
pub fn zero_sum_free(seq: &ModSequence) -> bool {
    let q = seq.modulus as usize;
    let mut reach = vec![false; q];
    for &t in &seq.terms {
        let t = t as usize;
        let mut next = reach.clone();
        next[t] = true;
        for (x, _) in reach.iter().enumerate().filter(|(_, &hit)| hit) {
            next[(x + t) % q] = true;
        }
        if next[0] {
            return false;
        }
        reach = next;
    }
    true
}

/// A generator `a` of `Z/q` and positive `x_i` with `a_i ≡ x_i a` and
/// `Σ x_i < q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub generator: u64,
    pub multiples: Vec<u64>,
}

/// Searches generators in increasing order and returns the first witness
/// for a long zero-sum-free sequence.
pub fn savchev_chen_witness(seq: &ModSequence) -> Result<Witness> {
    let q = seq.modulus;
    if seq.is_empty() || 2 * seq.len() as u64 <= q {
        return Err(Error::PreconditionUnmet(format!(
            "need length > q/2, got {} for q = {q}",
            seq.len()
        )));
    }
    if !zero_sum_free(seq) {
        return Err(Error::PreconditionUnmet("sequence is not zero-sum-free".into()));
    }
    for generator in (1..q).filter(|&a| gcd(a, q) == 1) {
        let inverse = mod_inverse(generator, q);
        // x_i < q is forced by the sum bound, so x_i is the residue a_i / a.
        let multiples: Vec<u64> = seq.terms.iter().map(|&t| t * inverse % q).collect();
        if multiples.iter().sum::<u64>() < q {
            return Ok(Witness { generator, multiples });
        }
    }
    Err(Error::TheoremViolation(format!(
        "no generator witnesses {:?} modulo {q}",
        seq.terms
    )))
}

fn mod_inverse(a: u64, q: u64) -> u64 {
    let (mut old_r, mut r) = (a as i64, q as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let quotient = old_r / r;
        (old_r, r) = (r, old_r - quotient * r);
        (old_s, s) = (s, old_s - quotient * s);
    }
    old_s.rem_euclid(q as i64) as u64
}

/// Number of distinct subsequence sums, the empty sum included.
pub fn subsequence_sum_count(xs: &[u64]) -> u64 {
    let total: u64 = xs.iter().sum();
    let mut sums = DenseSet::empty(total);
    sums.insert(0);
    for &x in xs {
        let shifted: Vec<u64> = sums.iter().map(|s| s + x).collect();
        for s in shifted {
            sums.insert(s);
        }
    }
    sums.len()
}

/// For a non-decreasing sequence with fewer than `2u` distinct subsequence
/// sums: `x_1` divides every term and `x_{i+1} <= x_1 + ... + x_i`.
pub fn subsum_structure_check(xs: &[u64]) -> Result<bool> {
    if xs.is_empty() || xs[0] == 0 || xs.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgs(
            "need a nonempty non-decreasing sequence of positive integers".into(),
        ));
    }
    if subsequence_sum_count(xs) >= 2 * xs.len() as u64 {
        return Ok(true);
    }
    let first = xs[0];
    let divisible = xs.iter().all(|&x| x % first == 0);
    let mut prefix = 0;
    let chained = xs.windows(2).all(|w| {
        prefix += w[0];
        w[1] <= prefix
    });
    Ok(divisible && chained)
}

/// A subset of `Z/q` for `q <= 64`, as a bitmask.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ResidueSet {
    modulus: u32,
    mask: u64,
}

impl ResidueSet {
    pub const MAX_MODULUS: u64 = 64;

    pub fn from_mask(modulus: u64, mask: u64) -> Result<Self> {
        if !(1..=Self::MAX_MODULUS).contains(&modulus) {
            return Err(Error::InvalidArgs(format!(
                "modulus must be in [1, {}], got {modulus}",
                Self::MAX_MODULUS
            )));
        }
        if modulus < 64 && mask >> modulus != 0 {
            return Err(Error::InvalidArgs(format!("mask {mask:#b} exceeds modulus {modulus}")));
        }
        Ok(Self {
            modulus: modulus as u32,
            mask,
        })
    }

    pub fn from_residues(modulus: u64, residues: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mask = residues.into_iter().fold(0u64, |m, r| m | 1 << (r % modulus.max(1)));
        Self::from_mask(modulus, mask)
    }

    pub fn len(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, x: u64) -> bool {
        self.mask >> (x % u64::from(self.modulus)) & 1 == 1
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.modulus
    }

    pub fn residues(&self) -> impl Iterator<Item = u64> + '_ {
        (0..u64::from(self.modulus)).filter(|&x| self.contains(x))
    }

    fn rotate(&self, by: u64) -> u64 {
        let q = self.modulus;
        let by = (by % u64::from(q)) as u32;
        if by == 0 {
            return self.mask;
        }
        let full = if q == 64 { u64::MAX } else { (1u64 << q) - 1 };
        ((self.mask << by) | (self.mask >> (q - by))) & full
    }

    pub fn sum(&self, other: &ResidueSet) -> ResidueSet {
        let mask = self.residues().fold(0, |acc, b| acc | other.rotate(b));
        ResidueSet { modulus: self.modulus, mask }
    }

    /// `self + self + ... + self`, `m >= 1` times.
    pub fn multiple(&self, m: u64) -> ResidueSet {
        (1..m).fold(*self, |acc, _| acc.sum(self))
    }

    /// `{z : self + z = self}`.
    pub fn stabilizer(&self) -> ResidueSet {
        let mask = (0..u64::from(self.modulus))
            .filter(|&z| self.rotate(z) == self.mask)
            .fold(0, |acc, z| acc | 1 << z);
        ResidueSet { modulus: self.modulus, mask }
    }

    fn is_subset(&self, other: &ResidueSet) -> bool {
        self.mask & !other.mask == 0
    }

    /// Whether the set lies in a coset of a proper subgroup: the differences
    /// generate a proper subgroup.
    pub fn in_proper_coset(&self) -> bool {
        let q = u64::from(self.modulus);
        let Some(base) = self.residues().next() else {
            return true;
        };
        self.residues().fold(q, |g, b| gcd(g, (b + q - base) % q)) > 1
    }
}

/// Brute-force checks in `Z/q` for nonempty `B`, `C` and `m >= 1`:
///
/// * if `0 ∈ B`: `B ⊆ stab(B + C)` or `|B + C| >= |C| + |B|/2`;
/// * if `|B + C| <= |C| + 1`, `B + C ≠ G` and `|B| >= 3`: `B` lies in a
///   proper coset;
/// * if `B` is not in a proper coset: `mB = G` or `|mB| >= (m + 1)|B|/2`;
/// * if `0 ∈ B ∩ C` has only the representation `0 + 0`:
///   `|B + C| >= |B| + |C| - 1`;
/// * if `0 ∉ B ∪ 2B ∪ ... ∪ mB`: `|B ∪ 2B ∪ ... ∪ mB| >= m|B|`.
pub fn cyclic_addition_oracles(b: &ResidueSet, c: &ResidueSet, m: u64) -> Result<bool> {
    if b.modulus != c.modulus {
        return Err(Error::InvalidArgs("B and C live in different groups".into()));
    }
    if b.is_empty() || c.is_empty() || m == 0 {
        return Err(Error::InvalidArgs("need nonempty B, C and m >= 1".into()));
    }
    let q = u64::from(b.modulus);
    let bc = b.sum(c);
    let (nb, nc, nbc) = (u64::from(b.len()), u64::from(c.len()), u64::from(bc.len()));

    if b.contains(0) && !b.is_subset(&bc.stabilizer()) && 2 * nbc < 2 * nc + nb {
        return Ok(false);
    }
    if nbc <= nc + 1 && !bc.is_full() && nb >= 3 && !b.in_proper_coset() {
        return Ok(false);
    }
    let mb = b.multiple(m);
    if !b.in_proper_coset() && !mb.is_full() && 2 * u64::from(mb.len()) < (m + 1) * nb {
        return Ok(false);
    }
    let zero_unique = b.residues().filter(|&x| c.contains((q - x) % q)).count() == 1;
    if b.contains(0) && c.contains(0) && zero_unique && nbc + 1 < nb + nc {
        return Ok(false);
    }
    // Iterated Scherk: needs 0 outside every jB with j <= m, not just mB.
    let mut union = *b;
    let mut layer = *b;
    for _ in 1..m {
        layer = layer.sum(b);
        union.mask |= layer.mask;
    }
    if !union.contains(0) && u64::from(union.len()) < m * nb {
        return Ok(false);
    }
    Ok(true)
}
