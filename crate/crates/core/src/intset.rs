//! Finite integer sets: normalized generator sets and bitmap-backed dense
//! sets with shift-or sumset arithmetic.
//!
//! A [`GeneratorSet`] is a set `A` of nonnegative integers with `min(A) = 0`,
//! `gcd(A) = 1` and at least three elements. Its diameter `l = max(A)` and
//! size `n = |A|` drive every other computation in the crate.
//!
//! A [`DenseSet`] is a subset of `[0, U]` stored as a bitmap. Sumsets are
//! computed by OR-ing shifted copies of one operand, iterating over either
//! the members or the maximal runs of the other operand, whichever is
//! cheaper. Runs are handled by dilating with an interval through repeated
//! doubling, so sets that are mostly one long block (which is what `mA`
//! looks like for large `m`) add in a handful of word passes.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default cap on the universe size of a single [`DenseSet`], in bits.
pub const DEFAULT_UNIVERSE_CAP: u64 = 1 << 22;

const WORD: u64 = 64;

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A normalized generator set: strictly increasing, `min = 0`, `gcd = 1`,
/// `n >= 3`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorSet {
    elements: Vec<u64>,
}

impl GeneratorSet {
    /// Wraps elements that are already in normalized form, rejecting
    /// anything that is not.
    pub fn new(elements: Vec<u64>) -> Result<Self> {
        if elements.len() < 3 {
            return Err(Error::InvalidSet(format!(
                "need at least 3 elements, got {}",
                elements.len()
            )));
        }
        if elements[0] != 0 {
            return Err(Error::InvalidSet(format!(
                "minimum must be 0, got {}",
                elements[0]
            )));
        }
        if elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSet("elements must be strictly increasing".into()));
        }
        let g = elements.iter().fold(0, |g, &a| gcd(g, a));
        if g != 1 {
            return Err(Error::InvalidSet(format!("gcd must be 1, got {g}")));
        }
        Ok(Self { elements })
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// Number of elements.
    pub fn n(&self) -> u64 {
        self.elements.len() as u64
    }

    /// Diameter, the largest element.
    pub fn l(&self) -> u64 {
        *self.elements.last().expect("generator sets are nonempty")
    }

    /// Smallest nonzero element.
    pub fn min_positive(&self) -> u64 {
        self.elements[1]
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// The reflected set `l - A`.
    pub fn reflect(&self) -> GeneratorSet {
        let l = self.l();
        GeneratorSet {
            elements: self.elements.iter().rev().map(|&a| l - a).collect(),
        }
    }

    pub fn to_dense(&self) -> DenseSet {
        let mut set = DenseSet::empty(self.l());
        for &a in &self.elements {
            set.insert(a);
        }
        set
    }

    /// Comma-separated literal, e.g. `0,3,5`.
    pub fn literal(&self) -> String {
        join(self.elements.iter())
    }
}

impl fmt::Display for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.literal())
    }
}

impl FromStr for GeneratorSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        normalize(&parse_literal(s)?)
    }
}

impl serde::Serialize for GeneratorSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements.serialize(serializer)
    }
}

impl<'de> serde::Deserialize<'de> for GeneratorSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let elements = Vec::<u64>::deserialize(deserializer)?;
        GeneratorSet::new(elements).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn join<'a>(values: impl Iterator<Item = &'a u64>) -> String {
    values.map(u64::to_string).collect::<Vec<_>>().join(",")
}

/// Parses the set literal format: comma-separated decimal integers with
/// optional whitespace.
pub fn parse_literal(text: &str) -> Result<Vec<i64>> {
    let parse_err = |reason: String| Error::Parse {
        literal: text.to_string(),
        reason,
    };
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(parse_err("empty literal".into()));
    }
    trimmed
        .split(',')
        .map(|token| {
            let token = token.trim();
            token
                .parse::<i64>()
                .map_err(|e| parse_err(format!("{token:?}: {e}")))
        })
        .collect()
}

/// Sorts, deduplicates, translates to minimum 0 and divides by the gcd.
pub fn normalize(raw: &[i64]) -> Result<GeneratorSet> {
    normalize_impl(raw, false)
}

/// Like [`normalize`], but rejects inputs whose translate has gcd > 1.
pub fn normalize_strict(raw: &[i64]) -> Result<GeneratorSet> {
    normalize_impl(raw, true)
}

fn normalize_impl(raw: &[i64], strict: bool) -> Result<GeneratorSet> {
    if raw.is_empty() {
        return Err(Error::InvalidSet("empty input".into()));
    }
    let mut values = raw.to_vec();
    values.sort_unstable();
    values.dedup();
    if values.len() < 3 {
        return Err(Error::InvalidSet(format!(
            "need at least 3 distinct values, got {}",
            values.len()
        )));
    }
    let min = values[0] as i128;
    let shifted: Vec<u64> = values.iter().map(|&v| (v as i128 - min) as u64).collect();
    let g = shifted.iter().fold(0, |g, &a| gcd(g, a));
    if strict && g != 1 {
        return Err(Error::NotCoprime { gcd: g });
    }
    GeneratorSet::new(shifted.into_iter().map(|a| a / g).collect())
}

/// The reflected set `l - A`.
pub fn reflect(a: &GeneratorSet) -> GeneratorSet {
    a.reflect()
}

/// A subset of `[0, universe]` stored as a bitmap.
///
/// Bits above `universe` are always zero. Equality is set equality and
/// ignores the universe.
#[derive(Clone)]
pub struct DenseSet {
    universe: u64,
    words: Vec<u64>,
}

impl DenseSet {
    pub fn empty(universe: u64) -> Self {
        Self {
            universe,
            words: vec![0; words_for(universe)],
        }
    }

    /// The interval `[lo, hi]`, with universe `hi`. Empty when `lo > hi`.
    pub fn interval(lo: u64, hi: u64) -> Self {
        let mut set = Self::empty(hi);
        set.insert_range(lo, hi);
        set
    }

    pub fn from_members(universe: u64, members: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut set = Self::empty(universe);
        for x in members {
            if x > universe {
                return Err(Error::InvalidArgs(format!(
                    "member {x} outside universe [0, {universe}]"
                )));
            }
            set.insert(x);
        }
        Ok(set)
    }

    pub fn universe(&self) -> u64 {
        self.universe
    }

    pub fn len(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn contains(&self, x: u64) -> bool {
        x <= self.universe && self.words[(x / WORD) as usize] >> (x % WORD) & 1 == 1
    }

    /// Inserts `x`. Panics if `x` lies outside the universe.
    pub fn insert(&mut self, x: u64) {
        assert!(x <= self.universe, "{x} outside universe [0, {}]", self.universe);
        self.words[(x / WORD) as usize] |= 1 << (x % WORD);
    }

    pub fn remove(&mut self, x: u64) {
        if x <= self.universe {
            self.words[(x / WORD) as usize] &= !(1 << (x % WORD));
        }
    }

    /// Inserts every integer of `[lo, hi]`.
    pub fn insert_range(&mut self, lo: u64, hi: u64) {
        if lo > hi {
            return;
        }
        assert!(hi <= self.universe, "{hi} outside universe [0, {}]", self.universe);
        let (first, last) = ((lo / WORD) as usize, (hi / WORD) as usize);
        let lo_mask = !0u64 << (lo % WORD);
        let hi_mask = !0u64 >> (WORD - 1 - hi % WORD);
        if first == last {
            self.words[first] |= lo_mask & hi_mask;
        } else {
            self.words[first] |= lo_mask;
            for w in &mut self.words[first + 1..last] {
                *w = !0;
            }
            self.words[last] |= hi_mask;
        }
    }

    pub fn min(&self) -> Option<u64> {
        self.next_member(0)
    }

    pub fn max(&self) -> Option<u64> {
        self.words
            .iter()
            .enumerate()
            .rev()
            .find(|(_, &w)| w != 0)
            .map(|(i, &w)| i as u64 * WORD + (WORD - 1 - u64::from(w.leading_zeros())))
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let base = i as u64 * WORD;
            BitIter(word).map(move |b| base + b)
        })
    }

    /// Maximal blocks of consecutive members, as inclusive `(start, end)`
    /// pairs in increasing order.
    pub fn runs(&self) -> Runs<'_> {
        Runs { set: self, pos: 0 }
    }

    /// Smallest member `>= from`.
    pub fn next_member(&self, from: u64) -> Option<u64> {
        if from > self.universe {
            return None;
        }
        let mut i = (from / WORD) as usize;
        let mut word = self.words[i] & (!0u64 << (from % WORD));
        loop {
            if word != 0 {
                return Some(i as u64 * WORD + u64::from(word.trailing_zeros()));
            }
            i += 1;
            if i == self.words.len() {
                return None;
            }
            word = self.words[i];
        }
    }

    /// Smallest non-member `>= from`; returns `universe + 1` when every
    /// position from `from` on is a member.
    pub fn next_non_member(&self, from: u64) -> u64 {
        if from > self.universe {
            return from;
        }
        let mut i = (from / WORD) as usize;
        let mut word = !self.words[i] & (!0u64 << (from % WORD));
        loop {
            if word != 0 {
                let pos = i as u64 * WORD + u64::from(word.trailing_zeros());
                return pos.min(self.universe + 1);
            }
            i += 1;
            if i == self.words.len() {
                return self.universe + 1;
            }
            word = !self.words[i];
        }
    }

    /// Copy restricted to `[0, limit]`, with universe `limit`.
    pub fn truncated(&self, limit: u64) -> DenseSet {
        let mut out = DenseSet::empty(limit);
        let n = out.words.len().min(self.words.len());
        out.words[..n].copy_from_slice(&self.words[..n]);
        out.clear_tail();
        out
    }

    pub fn union(&self, other: &DenseSet) -> DenseSet {
        let (big, small) = if self.universe >= other.universe {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = big.clone();
        for (o, s) in out.words.iter_mut().zip(&small.words) {
            *o |= s;
        }
        out
    }

    pub fn intersection(&self, other: &DenseSet) -> DenseSet {
        let universe = self.universe.min(other.universe);
        let mut out = DenseSet::empty(universe);
        for ((o, a), b) in out.words.iter_mut().zip(&self.words).zip(&other.words) {
            *o = a & b;
        }
        out.clear_tail();
        out
    }

    /// Members of `self` that are not in `other`.
    pub fn difference(&self, other: &DenseSet) -> DenseSet {
        let mut out = self.clone();
        for (o, b) in out.words.iter_mut().zip(&other.words) {
            *o &= !b;
        }
        out
    }

    /// Least element of the symmetric difference, if any.
    pub fn first_difference(&self, other: &DenseSet) -> Option<u64> {
        let len = self.words.len().max(other.words.len());
        (0..len).find_map(|i| {
            let a = self.words.get(i).copied().unwrap_or(0);
            let b = other.words.get(i).copied().unwrap_or(0);
            let x = a ^ b;
            (x != 0).then(|| i as u64 * WORD + u64::from(x.trailing_zeros()))
        })
    }

    /// `{c - x : x in self}`, for `c >= max(self)`, with universe `c`.
    pub fn reflected(&self, c: u64) -> DenseSet {
        let mut out = DenseSet::empty(c);
        for x in self.iter() {
            assert!(x <= c, "cannot reflect {x} around {c}");
            out.insert(c - x);
        }
        out
    }

    fn clear_tail(&mut self) {
        let used = self.universe % WORD + 1;
        if used < WORD {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
    }

    fn run_cost(&self) -> u64 {
        self.runs().map(|(s, e)| 1 + log2_ceil(e - s + 1)).sum()
    }
}

impl PartialEq for DenseSet {
    fn eq(&self, other: &Self) -> bool {
        self.first_difference(other).is_none()
    }
}

impl Eq for DenseSet {}

impl fmt::Debug for DenseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (s, e)) in self.runs().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            match e - s {
                0 => write!(f, "{s}")?,
                1 => write!(f, "{s},{e}")?,
                _ => write!(f, "{s}..{e}")?,
            }
        }
        write!(f, "}} in [0,{}]", self.universe)
    }
}

impl FromIterator<u64> for DenseSet {
    fn from_iter<I: IntoIterator<Item = u64>>(iter: I) -> Self {
        let members: Vec<u64> = iter.into_iter().collect();
        let universe = members.iter().copied().max().unwrap_or(0);
        DenseSet::from_members(universe, members).expect("universe covers every member")
    }
}

impl serde::Serialize for DenseSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.iter())
    }
}

struct BitIter(u64);

impl Iterator for BitIter {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(u64::from(b))
    }
}

pub struct Runs<'a> {
    set: &'a DenseSet,
    pos: u64,
}

impl Iterator for Runs<'_> {
    type Item = (u64, u64);

    fn next(&mut self) -> Option<(u64, u64)> {
        let start = self.set.next_member(self.pos)?;
        let end = self.set.next_non_member(start) - 1;
        self.pos = end + 2;
        Some((start, end))
    }
}

fn words_for(universe: u64) -> usize {
    (universe / WORD + 1) as usize
}

fn log2_ceil(x: u64) -> u64 {
    u64::from(WORD as u32 - (x.max(1) - 1).leading_zeros())
}

/// `dst |= src << shift`, dropping bits past the end of `dst`.
fn or_shifted(dst: &mut [u64], src: &[u64], shift: u64) {
    let word_shift = (shift / WORD) as usize;
    let bit = (shift % WORD) as u32;
    if word_shift >= dst.len() {
        return;
    }
    let room = dst.len() - word_shift;
    let src = &src[..src.len().min(room)];
    if bit == 0 {
        for (d, s) in dst[word_shift..].iter_mut().zip(src) {
            *d |= s;
        }
    } else {
        for (i, &s) in src.iter().enumerate() {
            let j = i + word_shift;
            dst[j] |= s << bit;
            if j + 1 < dst.len() {
                dst[j + 1] |= s >> (WORD as u32 - bit);
            }
        }
    }
}

/// `buf |= buf << shift` in place.
fn or_shifted_in_place(buf: &mut [u64], shift: u64) {
    let word_shift = (shift / WORD) as usize;
    let bit = (shift % WORD) as u32;
    for j in (word_shift..buf.len()).rev() {
        let i = j - word_shift;
        let mut v = buf[i] << bit;
        if bit != 0 && i > 0 {
            v |= buf[i - 1] >> (WORD as u32 - bit);
        }
        buf[j] |= v;
    }
}

/// Sumset `x + y` over universe `max(x) + max(y)` (or rather the sum of the
/// two universes), bounded by [`DEFAULT_UNIVERSE_CAP`].
pub fn sumset(x: &DenseSet, y: &DenseSet) -> Result<DenseSet> {
    sumset_with_cap(x, y, DEFAULT_UNIVERSE_CAP)
}

pub fn sumset_with_cap(x: &DenseSet, y: &DenseSet, cap: u64) -> Result<DenseSet> {
    let universe = x.universe + y.universe;
    if universe > cap {
        return Err(Error::Capacity {
            requested: universe,
            cap,
        });
    }
    Ok(sumset_into(x, y, universe))
}

/// `(x + y) ∩ [0, limit]`, with universe `min(limit, universe(x) + universe(y))`.
pub fn sumset_truncated(x: &DenseSet, y: &DenseSet, limit: u64) -> DenseSet {
    sumset_into(x, y, limit.min(x.universe + y.universe))
}

fn sumset_into(x: &DenseSet, y: &DenseSet, universe: u64) -> DenseSet {
    let mut out = DenseSet::empty(universe);
    if x.is_empty() || y.is_empty() {
        return out;
    }
    // Iterate over whichever operand is cheapest to walk, either member by
    // member or run by run.
    let costs = [x.len(), y.len(), x.run_cost(), y.run_cost()];
    let best = (0..4).min_by_key(|&i| costs[i]).unwrap_or(0);
    let (walked, shifted) = if best % 2 == 0 { (x, y) } else { (y, x) };
    if best < 2 {
        for s in walked.iter() {
            if s > universe {
                break;
            }
            or_shifted(&mut out.words, &shifted.words, s);
        }
    } else {
        let mut dilated: Vec<u64> = Vec::new();
        let mut dilated_len = 0;
        for (start, end) in walked.runs() {
            if start > universe {
                break;
            }
            let len = end - start + 1;
            if len == 1 {
                or_shifted(&mut out.words, &shifted.words, start);
                continue;
            }
            if len != dilated_len {
                dilate(&shifted.words, len, out.words.len(), &mut dilated);
                dilated_len = len;
            }
            or_shifted(&mut out.words, &dilated, start);
        }
    }
    out.clear_tail();
    out
}

/// Writes `src + [0, len - 1]` into `buf`, truncated to `words` words.
fn dilate(src: &[u64], len: u64, words: usize, buf: &mut Vec<u64>) {
    buf.clear();
    buf.resize(words, 0);
    let n = words.min(src.len());
    buf[..n].copy_from_slice(&src[..n]);
    let mut covered = 1;
    while covered * 2 <= len {
        or_shifted_in_place(buf, covered);
        covered *= 2;
    }
    if covered < len {
        or_shifted_in_place(buf, len - covered);
    }
}

/// The m-fold sumset `mA` over universe `[0, ml]`, by binary doubling.
pub fn m_fold(a: &GeneratorSet, m: u64) -> Result<DenseSet> {
    m_fold_with_cap(a, m, DEFAULT_UNIVERSE_CAP)
}

pub fn m_fold_with_cap(a: &GeneratorSet, m: u64, cap: u64) -> Result<DenseSet> {
    check_m_fold_args(a, m, cap)?;
    let base = a.to_dense();
    let mut acc = base.clone();
    // Since 0 is in A, jA + j'A = (j + j')A; walk the bits of m from the top.
    for bit in (0..63 - m.leading_zeros()).rev() {
        acc = sumset_into(&acc, &acc, acc.universe * 2);
        if m >> bit & 1 == 1 {
            acc = sumset_into(&acc, &base, acc.universe + base.universe);
        }
    }
    Ok(acc)
}

/// `mA` by `m - 1` successive additions of `A`.
pub fn m_fold_naive(a: &GeneratorSet, m: u64) -> Result<DenseSet> {
    check_m_fold_args(a, m, DEFAULT_UNIVERSE_CAP)?;
    let base = a.to_dense();
    let mut acc = base.clone();
    for _ in 1..m {
        acc = sumset_into(&acc, &base, acc.universe + base.universe);
    }
    Ok(acc)
}

/// Number of pairwise sumsets [`m_fold`] performs for a given `m`.
pub fn doubling_sumset_calls(m: u64) -> u64 {
    if m == 0 {
        return 0;
    }
    let bits = u64::from(64 - m.leading_zeros());
    (bits - 1) + u64::from(m.count_ones()) - 1
}

fn check_m_fold_args(a: &GeneratorSet, m: u64, cap: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::InvalidArgs("m must be at least 1".into()));
    }
    match m.checked_mul(a.l()) {
        Some(u) if u <= cap => Ok(()),
        Some(u) => Err(Error::Capacity { requested: u, cap }),
        None => Err(Error::Capacity {
            requested: u64::MAX,
            cap,
        }),
    }
}

/// Leftmost longest block of consecutive members, as `(start, length)`.
pub fn longest_run(x: &DenseSet) -> Result<(u64, u64)> {
    let mut best: Option<(u64, u64)> = None;
    for (s, e) in x.runs() {
        let len = e - s + 1;
        if best.is_none_or(|(_, l)| len > l) {
            best = Some((s, len));
        }
    }
    best.ok_or(Error::EmptySet)
}
