use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{RunManifest, SCHEMA_VERSION};
use crate::enumerate::{binomial, is_coprime};
use crate::error::{Error, Result};
use crate::intset::{doubling_sumset_calls, m_fold, m_fold_naive, DenseSet, GeneratorSet};

/// Multiset count above which the brute-force oracle is skipped.
const BRUTE_FORCE_LIMIT: u64 = 200_000;

#[derive(Clone, Debug)]
pub struct BenchOptions {
    pub l: u64,
    pub m: u64,
    pub reps: u32,
    /// Number of random sets.
    pub sets: u32,
    pub seed: u64,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self {
            l: 512,
            m: 1024,
            reps: 5,
            sets: 1,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchSample {
    pub set: String,
    pub n: u64,
    pub doubling_median_ms: f64,
    pub naive_median_ms: f64,
    pub doubling_sumset_calls: u64,
    pub naive_sumset_calls: u64,
    pub sumset_size: u64,
    /// Whether the multiset enumeration oracle also ran.
    pub brute_force_checked: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub schema: u32,
    pub l: u64,
    pub m: u64,
    pub reps: u32,
    pub seed: u64,
    pub samples: Vec<BenchSample>,
}

/// A random coprime set with `0` and `l`, each interior point kept with
/// probability 1/2, redrawn until it has at least three elements and gcd 1.
pub fn random_generator_set(rng: &mut impl Rng, l: u64) -> Result<GeneratorSet> {
    if l < 2 {
        return Err(Error::InvalidArgs(format!("diameter must be at least 2, got {l}")));
    }
    loop {
        let mut elements = vec![0];
        elements.extend((1..l).filter(|_| rng.gen_bool(0.5)));
        elements.push(l);
        if elements.len() >= 3 && is_coprime(&elements) {
            return GeneratorSet::new(elements);
        }
    }
}

/// `mA` by listing every multiset of `m` elements of `A`.
fn brute_force(a: &GeneratorSet, m: u64) -> DenseSet {
    let elements = a.elements();
    let mut out = DenseSet::empty(m * a.l());
    // Non-decreasing index tuples.
    let mut idx = vec![0usize; m as usize];
    loop {
        out.insert(idx.iter().map(|&i| elements[i]).sum());
        let Some(pos) = idx.iter().rposition(|&i| i + 1 < elements.len()) else {
            return out;
        };
        let next = idx[pos] + 1;
        idx[pos..].fill(next);
    }
}

fn median_ms(mut times: Vec<f64>) -> f64 {
    times.sort_by(f64::total_cmp);
    let mid = times.len() / 2;
    if times.len() % 2 == 1 {
        times[mid]
    } else {
        (times[mid - 1] + times[mid]) / 2.0
    }
}

fn timed<T>(reps: u32, mut f: impl FnMut() -> Result<T>) -> Result<(T, f64)> {
    let mut times = Vec::with_capacity(reps as usize);
    let mut last = None;
    for _ in 0..reps {
        let start = Instant::now();
        last = Some(f()?);
        times.push(start.elapsed().as_secs_f64() * 1e3);
    }
    Ok((last.expect("reps >= 1"), median_ms(times)))
}

/// Times `mA` by doubling against `m - 1` successive sumsets on seeded
/// random sets. Any disagreement is a [`Error::Mismatch`].
pub fn run_bench(options: &BenchOptions) -> Result<(BenchReport, RunManifest)> {
    if options.reps == 0 || options.sets == 0 || options.m == 0 {
        return Err(Error::InvalidArgs("reps, sets and m must be at least 1".into()));
    }
    let mut manifest = RunManifest::start("bench", 1);
    manifest
        .param("l", options.l)
        .param("m", options.m)
        .param("reps", options.reps)
        .param("sets", options.sets)
        .param("seed", options.seed);
    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    let mut samples = Vec::new();
    for _ in 0..options.sets {
        let a = random_generator_set(&mut rng, options.l)?;
        let (fast, doubling_median_ms) = timed(options.reps, || m_fold(&a, options.m))?;
        let (slow, naive_median_ms) = timed(options.reps, || m_fold_naive(&a, options.m))?;
        if let Some(w) = fast.first_difference(&slow) {
            return Err(Error::Mismatch(format!(
                "{a}, m = {}: doubling and naive sumsets differ at {w}",
                options.m
            )));
        }
        let brute_force_checked = binomial(a.n() + options.m - 1, options.m) <= BRUTE_FORCE_LIMIT;
        if brute_force_checked {
            if let Some(w) = fast.first_difference(&brute_force(&a, options.m)) {
                return Err(Error::Mismatch(format!(
                    "{a}, m = {}: doubling and multiset enumeration differ at {w}",
                    options.m
                )));
            }
        }
        manifest.count("sets", 1);
        samples.push(BenchSample {
            set: a.literal(),
            n: a.n(),
            doubling_median_ms,
            naive_median_ms,
            doubling_sumset_calls: doubling_sumset_calls(options.m),
            naive_sumset_calls: options.m - 1,
            sumset_size: fast.len(),
            brute_force_checked,
        });
    }
    manifest.finish();
    let report = BenchReport {
        schema: SCHEMA_VERSION,
        l: options.l,
        m: options.m,
        reps: options.reps,
        seed: options.seed,
        samples,
    };
    Ok((report, manifest))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_case_uses_all_three_methods() {
        let (report, manifest) = run_bench(&BenchOptions {
            l: 16,
            m: 4,
            reps: 1,
            ..Default::default()
        })
        .unwrap();
        assert!(report.samples[0].brute_force_checked);
        assert_eq!(report.samples[0].naive_sumset_calls, 3);
        assert_eq!(manifest.parameters["seed"], "24301");
    }

    #[test]
    fn call_counts() {
        let (report, _) = run_bench(&BenchOptions {
            l: 64,
            m: 64,
            reps: 1,
            ..Default::default()
        })
        .unwrap();
        let s = &report.samples[0];
        assert_eq!((s.doubling_sumset_calls, s.naive_sumset_calls), (6, 63));
        assert!(s.sumset_size <= 64 * 64 + 1);
    }

    #[test]
    fn seeded_sets_repeat() {
        let draw = |seed| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            random_generator_set(&mut rng, 40).unwrap()
        };
        assert_eq!(draw(7), draw(7));
        let a = draw(7);
        assert_eq!(a.l(), 40);
    }

    #[test]
    fn brute_force_matches_small_example() {
        let a = GeneratorSet::new(vec![0, 3, 5]).unwrap();
        let got: Vec<u64> = brute_force(&a, 2).iter().collect();
        assert_eq!(got, vec![0, 3, 5, 6, 8, 10]);
    }
}
