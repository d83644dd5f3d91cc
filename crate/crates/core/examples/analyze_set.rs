//! Full report for one set: shape parameters, gaps on both ends, the
//! structure verdict at `M` and the head / block / tail split of `mA`.
//!
//! cargo run --example analyze_set -- 0,4,6,9,13

use sumsets::harness::{run_analyze, to_json, AnalyzeOptions};

fn main() -> sumsets::Result<()> {
    let literal = std::env::args().nth(1).unwrap_or_else(|| "0,4,6,9,13".to_string());
    let report = run_analyze(&literal, &AnalyzeOptions::default())?;

    let p = report.shape;
    println!("A = {}  (n = {}, l = {})", report.set, report.n, report.l);
    println!("k = {}, r = {}, M = {}, delta = {}", p.k, p.r, p.threshold, p.delta);
    println!("E  = {:?}  max = {}", report.gaps.gaps, report.gaps.frobenius);
    println!("E' = {:?}  max = {}", report.reflected_gaps.gaps, report.reflected_gaps.frobenius);

    let v = &report.verdicts[0];
    println!(
        "m = {}: holds = {}, gap {} vs bound {}{}",
        v.m,
        v.holds,
        v.gap_length,
        v.bound,
        if v.tight { " (tight)" } else { "" }
    );
    let d = &report.decomposition;
    println!(
        "head {:?}, block [{}, {}], tail {:?}",
        d.head.iter().collect::<Vec<_>>(),
        d.run_lo,
        d.run_hi,
        d.tail.iter().collect::<Vec<_>>()
    );
    if std::env::var_os("SUMSETS_JSON").is_some() {
        println!("{}", to_json(&report)?);
    }
    Ok(())
}
