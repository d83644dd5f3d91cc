//! Brute-force checks of the supporting results on small instances.

use sumsets::enumerate::generator_sets_up_to;
use sumsets::structure::shape_params;
use sumsets::toolbox::{
    cyclic_addition_oracles, dixmier_interval_check, freiman_check, savchev_chen_witness, subsum_structure_check,
    zero_sum_free, ModSequence, ResidueSet,
};

fn main() -> sumsets::Result<()> {
    let mut sets = 0;
    for a in generator_sets_up_to(10) {
        assert!(freiman_check(&a));
        let k = shape_params(&a).k;
        for m in 1..=3 * k + 4 {
            assert!(dixmier_interval_check(&a, m)?);
        }
        sets += 1;
    }
    println!("freiman and interval bounds hold on {sets} sets with l <= 10");

    let seq = ModSequence::new(11, [3, 3, 3, 6, 9, 3])?;
    println!("{:?} mod 11 zero-sum-free: {}", seq.terms(), zero_sum_free(&seq));
    let w = savchev_chen_witness(&seq)?;
    println!("  generator {} with multiples {:?}", w.generator, w.multiples);

    println!("[2, 3] structured: {}", subsum_structure_check(&[2, 3])?);
    println!("[1, 1, 2, 4] structured: {}", subsum_structure_check(&[1, 1, 2, 4])?);

    let mut pairs = 0;
    for b in 1..1u64 << 8 {
        for c in (1..1u64 << 8).step_by(7) {
            let (b, c) = (ResidueSet::from_mask(8, b)?, ResidueSet::from_mask(8, c)?);
            assert!(cyclic_addition_oracles(&b, &c, 3)?);
            pairs += 1;
        }
    }
    println!("cyclic addition theorems hold on {pairs} pairs in Z/8");
    Ok(())
}
