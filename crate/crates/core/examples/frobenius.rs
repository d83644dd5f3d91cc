//! Gaps and Frobenius numbers by bitmap closure and by the Apéry set, with
//! the two-generator closed form as a cross-check.

use sumsets::intset::{gcd, GeneratorSet};
use sumsets::semigroup::{apery_set, exceptional_set, frobenius_apery};

fn main() -> sumsets::Result<()> {
    for xs in [vec![0, 3, 5], vec![0, 4, 6, 9], vec![0, 6, 9, 20], vec![0, 11, 13, 17, 30]] {
        let a = GeneratorSet::new(xs)?;
        let gaps = exceptional_set(&a);
        println!(
            "{a}: {} gaps, frobenius {} (apery {}), apery set {:?}",
            gaps.gaps.len(),
            gaps.frobenius,
            frobenius_apery(&a),
            apery_set(&a)
        );
    }

    let mut checked = 0;
    for a in 3..=40u64 {
        for b in (a + 1..=40).filter(|&b| gcd(a, b) == 1) {
            let s = GeneratorSet::new(vec![0, a, b])?;
            assert_eq!(exceptional_set(&s).frobenius, ((a - 1) * (b - 1)) as i64 - 1);
            checked += 1;
        }
    }
    println!("(a-1)(b-1)-1 confirmed for {checked} pairs");
    Ok(())
}
