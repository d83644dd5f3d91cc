//! Where `mA` settles into its final shape. Prints the verdict for every
//! `m` up to `m_max` and the least `m` from which it holds, then runs a
//! small exhaustive scan.
//!
//! cargo run --example structure_scan -- 0,1,10,11,12,13,14 12

use sumsets::harness::{run_scan, ScanMode, ScanOptions, ScanRows};
use sumsets::structure::threshold_scan;

fn main() -> sumsets::Result<()> {
    let mut args = std::env::args().skip(1);
    let a = args.next().unwrap_or_else(|| "0,1,10,11,12,13,14".into()).parse()?;
    let m_max = args.next().map_or(Ok(12), |s| s.parse()).expect("m_max is an integer");

    let scan = threshold_scan(&a, m_max)?;
    for v in &scan.verdicts {
        let mark = if v.holds { "holds" } else { "fails" };
        println!("m = {:>3}: {mark:5} witness {:?} gap {} bound {}", v.m, v.witness, v.gap_length, v.bound);
    }
    println!("{a}: identity holds from m = {}", scan.stable_from);

    let mut options = ScanOptions::new(ScanMode::Structure);
    options.l_max = Some(10);
    let report = run_scan(&options)?;
    if let ScanRows::Structure(rows) = &report.rows {
        let tight = rows.iter().filter(|r| r.tight.starts_with('1')).count();
        println!("{} sets with l <= 10, {} tight at M, {} violations", rows.len(), tight, report.manifest().violations.len());
    }
    Ok(())
}
