mod common;

use proptest::collection::{btree_set, vec};
use proptest::prelude::*;
use sumsets::intset::{
    m_fold, m_fold_naive, normalize, sumset, sumset_truncated, DenseSet, GeneratorSet,
};
use sumsets::semigroup::{exceptional_set, frobenius_apery};
use sumsets::stability::{stab_threshold, stability_check};
use sumsets::structure::SetAnalysis;
use sumsets::toolbox::{zero_sum_free, ModSequence};

/// Coprime generator sets with diameter in `[2, max_l]`.
fn generator_set(max_l: u64) -> impl Strategy<Value = GeneratorSet> {
    (2..=max_l)
        .prop_flat_map(|l| (Just(l), btree_set(1..l, 1..=(l as usize - 1).max(1))))
        .prop_filter_map("gcd 1", |(l, inner)| {
            let mut elements = vec![0];
            elements.extend(inner.into_iter().filter(|&x| x < l));
            elements.push(l);
            let g = elements.iter().fold(0, |g, &x| common::gcd(g, x));
            (g == 1 && elements.len() >= 3).then(|| GeneratorSet::new(elements).unwrap())
        })
}

fn dense(universe: u64) -> impl Strategy<Value = DenseSet> {
    btree_set(0..=universe, 0..=universe as usize)
        .prop_map(move |s| DenseSet::from_members(universe, s).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn sumset_matches_pairwise_sums(x in dense(70), y in dense(150)) {
        let got: Vec<u64> = sumset(&x, &y).unwrap().iter().collect();
        let mut want: Vec<u64> = x.iter().flat_map(|a| y.iter().map(move |b| a + b)).collect();
        want.sort_unstable();
        want.dedup();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn truncated_sumset_is_a_prefix(x in dense(80), y in dense(80), limit in 0u64..200) {
        let full = sumset(&x, &y).unwrap();
        let cut = sumset_truncated(&x, &y, limit);
        prop_assert_eq!(cut, full.truncated(limit));
    }

    #[test]
    fn m_fold_matches_reference(a in generator_set(14), m in 1u64..8) {
        let got: Vec<bool> = {
            let s = m_fold(&a, m).unwrap();
            (0..=m * a.l()).map(|z| s.contains(z)).collect()
        };
        prop_assert_eq!(got, common::m_fold(a.elements(), m));
        prop_assert_eq!(m_fold(&a, m).unwrap(), m_fold_naive(&a, m).unwrap());
    }

    #[test]
    fn m_fold_is_monotone_and_reflects(a in generator_set(20), m in 1u64..10) {
        let small = m_fold(&a, m).unwrap();
        let big = m_fold(&a, m + 1).unwrap();
        // 0 is in A, so mA is inside (m+1)A.
        prop_assert!(small.iter().all(|z| big.contains(z)));
        let mirrored = m_fold(&a.reflect(), m).unwrap();
        prop_assert_eq!(mirrored, small.reflected(m * a.l()));
    }

    #[test]
    fn normalization_is_idempotent(raw in vec(-1000i64..1000, 3..12), shift in -500i64..500) {
        if let Ok(a) = normalize(&raw) {
            let again = normalize(&a.elements().iter().map(|&x| x as i64).collect::<Vec<_>>()).unwrap();
            prop_assert_eq!(&again, &a);
            let shifted: Vec<i64> = raw.iter().map(|&x| x + shift).collect();
            prop_assert_eq!(normalize(&shifted).unwrap(), a);
        }
    }

    #[test]
    fn gaps_match_reference(a in generator_set(18)) {
        let g = exceptional_set(&a);
        prop_assert_eq!(&g.gaps, &common::gaps(a.elements()));
        prop_assert_eq!(frobenius_apery(&a), g.frobenius);
    }

    #[test]
    fn structure_holds_from_threshold(a in generator_set(18), extra in 0u64..4) {
        let analysis = SetAnalysis::new(&a);
        let m = analysis.shape.threshold + extra;
        let v = analysis.check(m).unwrap();
        prop_assert!(v.holds);
        prop_assert!(v.gap_length >= v.bound);
        // l - A has the same parameters and the mirrored verdict.
        let mirror = SetAnalysis::new(&a.reflect());
        let w = mirror.check(m).unwrap();
        prop_assert_eq!((w.gap_length, w.bound, w.holds), (v.gap_length, v.bound, v.holds));
    }

    #[test]
    fn stability_outcome_mirrors(a in generator_set(16)) {
        if let Ok(t) = stab_threshold(a.l(), a.n()) {
            let v = stability_check(&a, t).unwrap();
            let w = stability_check(&a.reflect(), t).unwrap();
            prop_assert_eq!(w.outcome, v.outcome.mirrored());
        }
    }

    #[test]
    fn zero_sum_free_matches_enumeration(q in 2u64..12, terms in vec(1u64..100, 1..10)) {
        let terms: Vec<u64> = terms.into_iter().map(|t| 1 + t % (q - 1)).collect();
        let seq = ModSequence::new(q, terms.iter().copied()).unwrap();
        let u = terms.len();
        let brute = (1u32..1 << u).all(|mask| {
            (0..u).filter(|&i| mask >> i & 1 == 1).map(|i| terms[i]).sum::<u64>() % q != 0
        });
        prop_assert_eq!(zero_sum_free(&seq), brute);
    }
}
