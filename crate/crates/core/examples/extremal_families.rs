//! The two families on which the gap length `ml - max(E) - max(E')` meets
//! its lower bound exactly.

use sumsets::harness::{run_extremal, ExtremalOptions};
use sumsets::structure::{progression_plus_block, progression_plus_point, SetAnalysis};

fn main() -> sumsets::Result<()> {
    for a in [progression_plus_point(12, 3)?, progression_plus_block(7, 2, 3)?] {
        let analysis = SetAnalysis::new(&a);
        let m = analysis.shape.threshold;
        let v = analysis.verdict(m)?;
        println!("{a}: M = {m}, gap {} = bound {}, max(E) = {}", v.gap_length, v.bound, analysis.gaps.frobenius);
    }

    let (report, _) = run_extremal(&ExtremalOptions::default())?;
    let point = report.rows.iter().filter(|r| r.family == "point").count();
    println!(
        "{point} point-family and {} block-family sets with l <= 60; {} not tight",
        report.rows.len() - point,
        report.violations.len()
    );
    Ok(())
}
