use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, ValueEnum};
use kumjac::report::{emit_report, run_suite, Format, Options, DEFAULT_SEED, SUITES};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

/// Run exact verification suites and print a report.
#[derive(Debug, Parser)]
#[command(name = "kumjac", version)]
struct Args {
    /// Suite to run, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Restrict suites that range over n to this value.
    #[arg(long)]
    n: Option<usize>,
    /// Range of e for the divisor tables, as `lo..hi` (inclusive) or a single value.
    #[arg(long, default_value = "1..10")]
    e_range: String,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    format: OutputFormat,
    /// Keep only cases whose identifier contains this string.
    #[arg(long)]
    cases: Option<String>,
    /// Number of random samples per randomized check.
    #[arg(long)]
    trials: Option<usize>,
    /// Largest k for the double-factorial identity.
    #[arg(long, default_value_t = 6)]
    kmax: usize,
    /// Largest n for the double-factorial identity.
    #[arg(long, default_value_t = 8)]
    nmax: usize,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record wall time in the report (makes the output non-reproducible).
    #[arg(long)]
    timing: bool,
    /// List the available suites and exit.
    #[arg(long)]
    list: bool,
}

fn parse_range(s: &str) -> anyhow::Result<(i64, i64)> {
    let parse = |x: &str| {
        x.trim()
            .parse::<i64>()
            .with_context(|| format!("bad integer {x:?} in e range"))
    };
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
        None => {
            let v = parse(s)?;
            (v, v)
        }
    };
    if lo < 1 || lo > hi {
        bail!("e range must satisfy 1 <= lo <= hi, got {s:?}");
    }
    Ok((lo, hi))
}

fn run(args: Args) -> anyhow::Result<bool> {
    if args.list {
        for s in SUITES {
            println!("{s}");
        }
        println!("all");
        return Ok(true);
    }
    let opts = Options {
        n: args.n,
        e_range: parse_range(&args.e_range)?,
        seed: args.seed,
        cases: args.cases,
        trials: args.trials,
        kmax: args.kmax,
        nmax: args.nmax,
        timing: args.timing,
    };
    let report =
        run_suite(&args.suite, &opts).with_context(|| format!("running suite {:?}", args.suite))?;
    let format = match args.format {
        OutputFormat::Text => Format::Text,
        OutputFormat::Json => Format::Json,
    };
    let bytes = emit_report(&report, format);
    match &args.out {
        Some(path) => {
            fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))?
        }
        None => print!("{bytes}"),
    }
    Ok(report.all_passed())
}

fn main() -> ExitCode {
    match run(Args::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
