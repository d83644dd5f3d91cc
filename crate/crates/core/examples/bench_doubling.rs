//! `mA` by repeated doubling against `m - 1` successive sumsets.
//!
//! cargo run --release --example bench_doubling -- 512 1024

use sumsets::harness::{run_bench, BenchOptions};

fn main() -> sumsets::Result<()> {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().expect("integer argument"));
    let options = BenchOptions {
        l: args.next().unwrap_or(512),
        m: args.next().unwrap_or(1024),
        reps: 3,
        sets: 2,
        ..Default::default()
    };
    let (report, _) = run_bench(&options)?;
    for s in &report.samples {
        println!(
            "n = {:>3}: doubling {:>8.3} ms ({} calls), naive {:>8.3} ms ({} calls), |mA| = {}",
            s.n, s.doubling_median_ms, s.doubling_sumset_calls, s.naive_median_ms, s.naive_sumset_calls, s.sumset_size
        );
    }
    Ok(())
}
