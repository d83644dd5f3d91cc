//! Below `M` the structure identity can fail, but for `n >= 6` and `m` past
//! the stability threshold only two explicit families fail.
//!
//! cargo run --example stability_exceptions -- 14 7

use sumsets::stability::{stab_threshold, stability_scan, StabilityScanOptions};

fn main() -> sumsets::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().expect("integer argument"));
    let l = args.next().unwrap_or(14);
    let n = args.next().unwrap_or(7);

    let m = stab_threshold(l, n)?;
    let scan = stability_scan(l, n, &StabilityScanOptions::default())?;
    println!(
        "l = {l}, n = {n}, m = {m}: {} candidates, {} with gcd > 1, {} hold",
        scan.enumerated, scan.skipped_non_coprime, scan.holds
    );
    for entry in scan.failures() {
        let v = entry.verdict.as_ref().expect("failures carry verdicts");
        println!("  {:?}: {} at {:?}", entry.elements, v.outcome, v.witness);
    }
    Ok(())
}
