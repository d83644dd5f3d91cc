//! `sumsets` command line tool. Exit codes: 0 clean, 1 theorem violation,
//! 2 usage or input error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use sumsets::harness::{self, AnalyzeOptions, BenchOptions, ExtremalOptions, RunManifest, ScanMode, ScanOptions};
use sumsets::parallel::THREADS_ENV;
use sumsets::{Error, Result};

#[derive(Parser)]
#[command(name = "sumsets", version, about = "Iterated sumsets mA and the structure of their gaps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct Common {
    /// Worker threads (default: available parallelism).
    #[arg(long, env = THREADS_ENV)]
    threads: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Full report for one set, or for each set in a file (`-` for stdin).
    Analyze {
        /// Set literal such as `0,3,5`, a file with one literal per line, or `-`.
        input: String,
        #[arg(long, conflicts_with = "m_max")]
        m: Option<u64>,
        #[arg(long)]
        m_max: Option<u64>,
        /// Reject sets whose translate has gcd > 1 instead of dividing it out.
        #[arg(long)]
        strict_normalize: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Checks every set in a diameter range and writes one row per set.
    Scan {
        #[arg(long, value_enum, default_value = "structure")]
        mode: Mode,
        #[arg(long)]
        l: Option<u64>,
        #[arg(long)]
        l_max: Option<u64>,
        #[arg(long)]
        n: Option<u64>,
        /// Stability mode: the `m` to test (default: the stability threshold).
        #[arg(long)]
        m: Option<u64>,
        /// Stability mode: allow n = 5 and m below the threshold.
        #[arg(long)]
        exploratory: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[command(flatten)]
        common: Common,
    },
    /// Tightness of the gap-length bound on the two extremal families.
    Extremal {
        #[arg(long, default_value_t = 60)]
        l_max: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[command(flatten)]
        common: Common,
    },
    /// Stability scans with per-(l, n) summaries of the failing sets.
    Stability {
        #[arg(long)]
        l: Option<u64>,
        #[arg(long)]
        l_max: Option<u64>,
        #[arg(long)]
        n: Option<u64>,
        #[arg(long)]
        m: Option<u64>,
        #[arg(long)]
        exploratory: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Times mA by doubling against repeated sumsets on random sets.
    Bench {
        #[arg(long, default_value_t = 512)]
        l: u64,
        #[arg(long, default_value_t = 1024)]
        m: u64,
        #[arg(long, default_value_t = 5)]
        reps: u32,
        #[arg(long, default_value_t = 1)]
        sets: u32,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Structure,
    Stability,
    Toolbox,
}

impl From<Mode> for ScanMode {
    fn from(mode: Mode) -> Self {
        match mode {
            Mode::Structure => ScanMode::Structure,
            Mode::Stability => ScanMode::Stability,
            Mode::Toolbox => ScanMode::Toolbox,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => Ok(std::fs::write(path, text)?),
        None => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            Ok(())
        }
    }
}

/// Next to `--out` as `<out>.manifest.json`, otherwise on stderr.
fn emit_manifest(out: Option<&PathBuf>, manifest: &RunManifest) -> Result<()> {
    let text = harness::to_json(manifest)?;
    match out {
        Some(path) => {
            let mut name = path.clone().into_os_string();
            name.push(".manifest.json");
            Ok(std::fs::write(name, text + "\n")?)
        }
        None => {
            eprintln!("{text}");
            Ok(())
        }
    }
}

fn report_violations(violations: &[String]) {
    for v in violations {
        eprintln!("violation: {v}");
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Analyze {
            input,
            m,
            m_max,
            strict_normalize,
            common,
        } => {
            let options = AnalyzeOptions {
                m,
                m_max,
                strict_normalize,
                threads: common.threads,
            };
            let literals = harness::read_set_literals(&input)?;
            if literals.is_empty() {
                return Err(Error::InvalidArgs(format!("no set literals in {input:?}")));
            }
            let reports = literals
                .iter()
                .map(|lit| harness::run_analyze(lit, &options))
                .collect::<Result<Vec<_>>>()?;
            let text = match reports.as_slice() {
                [single] => harness::to_json(single)?,
                many => harness::to_json(&many)?,
            };
            emit(common.out.as_ref(), &text)?;
            let mut code = 0;
            for r in &reports {
                report_violations(&r.violations);
                code = code.max(r.exit_code());
            }
            Ok(code)
        }
        Command::Scan {
            mode,
            l,
            l_max,
            n,
            m,
            exploratory,
            format,
            common,
        } => {
            let mut options = ScanOptions::new(mode.into());
            options.l = l;
            options.l_max = l_max;
            options.n = n;
            options.m = m;
            options.exploratory = exploratory;
            options.threads = common.threads;
            let report = harness::run_scan(&options)?;
            let text = match format {
                Format::Csv => report.rows.to_csv()?,
                Format::Json => harness::to_json(&report)?,
            };
            emit(common.out.as_ref(), &text)?;
            emit_manifest(common.out.as_ref(), report.manifest())?;
            report_violations(&report.manifest().violations);
            Ok(report.exit_code())
        }
        Command::Extremal { l_max, format, common } => {
            let (report, manifest) = harness::run_extremal(&ExtremalOptions {
                l_max,
                threads: common.threads,
                ..Default::default()
            })?;
            let text = match format {
                Format::Csv => harness::to_csv(&report.rows)?,
                Format::Json => harness::to_json(&report)?,
            };
            emit(common.out.as_ref(), &text)?;
            if common.out.is_some() {
                emit_manifest(common.out.as_ref(), &manifest)?;
            }
            report_violations(&report.violations);
            Ok(report.exit_code())
        }
        Command::Stability {
            l,
            l_max,
            n,
            m,
            exploratory,
            common,
        } => {
            let mut options = ScanOptions::new(ScanMode::Stability);
            options.l = l;
            options.l_max = l_max;
            options.n = n;
            options.m = m;
            options.exploratory = exploratory;
            options.threads = common.threads;
            let (summaries, manifest) = harness::run_stability(&options)?;
            emit(common.out.as_ref(), &harness::to_json(&summaries)?)?;
            if common.out.is_some() {
                emit_manifest(common.out.as_ref(), &manifest)?;
            }
            report_violations(&manifest.violations);
            Ok(manifest.exit_code())
        }
        Command::Bench {
            l,
            m,
            reps,
            sets,
            seed,
            out,
        } => {
            let (report, manifest) = harness::run_bench(&BenchOptions {
                l,
                m,
                reps,
                sets,
                seed,
            })?;
            emit(out.as_ref(), &harness::to_json(&report)?)?;
            if out.is_some() {
                emit_manifest(out.as_ref(), &manifest)?;
            }
            Ok(0)
        }
    }
}
