//! `revratio`: posted-price revenues for bundles of i.i.d. items.
//!
//! Subcommands compute the optimal posted price of a discrete distribution,
//! compare selling k items separately against selling them as one bundle,
//! emit the worst-case price table and ratio-curve samples, and run the
//! numerical verification suite for the tight worst-case constant.
//!
//! Exit codes: 0 success, 1 verification failure or internal invariant
//! violation, 2 usage or input error, 3 resource cap exceeded.

// `!(x > y)` guards reject NaN along with out-of-range values; the positive
// comparison form would let NaN slip past validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use output::{
    figure_csv, json_line, round12, table_csv, ConstantsOut, ReportOut, RevenueOut, SegmentOut,
};
use revratio::dist::DEFAULT_SUPPORT_CAP;
use revratio::verifier::SuiteSelection;
use revratio::{analysis, revenue, verifier, Dist64, Error};

#[derive(Parser)]
#[command(
    name = "revratio",
    version,
    about = "Posted-price revenues for i.i.d. items: separate vs. bundled selling, \
             worst-case segment tables, and a numerical verification suite"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Optimal posted price, separate revenue, bundle revenue, and their ratio
    Revenue {
        /// JSON distribution file: {"support": [...], "probs": [...]}
        #[arg(long)]
        dist: PathBuf,
        /// Number of i.i.d. items
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        /// Support-size cap for the exact convolution
        #[arg(long, default_value_t = DEFAULT_SUPPORT_CAP, value_parser = parse_cap)]
        cap: usize,
    },
    /// The worst-case constants: crossing location, ratio floor, equation residual
    Constants,
    /// Per-price segment table covering (0, c_max]
    Table {
        /// Upper end of the mean range
        #[arg(long, default_value_t = 40.0)]
        c_max: f64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Write to this file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Ratio-curve samples d·h_d(c)/c in long CSV form
    Figure {
        /// Largest price to sample
        #[arg(long, default_value_t = 8, value_parser = clap::value_parser!(u32).range(1..))]
        d_max: u32,
        /// First sampled mean
        #[arg(long, default_value_t = 0.01)]
        c_min: f64,
        /// Last sampled mean
        #[arg(long, default_value_t = 12.0)]
        c_max: f64,
        /// Grid spacing
        #[arg(long, default_value_t = 0.01)]
        step: f64,
        /// Write to this file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the numerical verification suite and report pass/fail with margins
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Seed for the randomized reduction checks
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Support-size cap for the exact convolutions
        #[arg(long, default_value_t = DEFAULT_SUPPORT_CAP, value_parser = parse_cap)]
        cap: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    All,
    Chernoff,
    K2,
    K3,
    Anderson,
    Lower,
    Witness,
    Reduction,
}

impl From<Suite> for SuiteSelection {
    fn from(s: Suite) -> Self {
        match s {
            Suite::All => SuiteSelection::All,
            Suite::Chernoff => SuiteSelection::Chernoff,
            Suite::K2 => SuiteSelection::K2,
            Suite::K3 => SuiteSelection::K3,
            Suite::Anderson => SuiteSelection::Anderson,
            Suite::Lower => SuiteSelection::Lower,
            Suite::Witness => SuiteSelection::Witness,
            Suite::Reduction => SuiteSelection::Reduction,
        }
    }
}

fn parse_cap(s: &str) -> Result<usize, String> {
    let v: usize = s.parse().map_err(|e| format!("{e}"))?;
    if v < 1000 {
        return Err("support cap must be at least 1000".into());
    }
    Ok(v)
}

/// A failure carrying its process exit code; every error path funnels here.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            // bad data or parameters supplied by the caller
            Error::InvalidDistribution(_) | Error::Domain(_) | Error::Degenerate => 2,
            // the configured resource limit stopped the computation
            Error::Capacity { .. } => 3,
            // numerical structure the library relies on failed to hold
            Error::Bracketing { .. } | Error::Structure { .. } => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Revenue { dist, k, cap } => cmd_revenue(&dist, k, cap),
        Command::Constants => cmd_constants(),
        Command::Table { c_max, format, out } => cmd_table(c_max, format, out.as_deref()),
        Command::Figure {
            d_max,
            c_min,
            c_max,
            step,
            out,
        } => cmd_figure(d_max, c_min, c_max, step, out.as_deref()),
        Command::Verify { suite, seed, cap } => cmd_verify(suite, seed, cap),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DistributionFile {
    support: Vec<f64>,
    probs: Vec<f64>,
}

fn cmd_revenue(path: &Path, k: u32, cap: usize) -> Result<ExitCode, Failure> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let file: DistributionFile = serde_json::from_str(&raw)
        .map_err(|e| Failure::input(format!("invalid distribution file: {e}")))?;
    let dist = Dist64::new(file.support, file.probs)?;
    let quote = revenue::myerson_price(&dist)?;
    let rr = revenue::brev(&dist, k, cap)?;
    let out = RevenueOut {
        myerson_price: round12(quote.price),
        rev: round12(quote.revenue),
        srev: round12(rr.srev),
        brev: round12(rr.brev),
        bundle_price: round12(rr.bundle_price),
        ratio: round12(rr.ratio),
    };
    write_stdout(&json_line(&out))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_constants() -> Result<ExitCode, Failure> {
    let cert = analysis::constants::<f64>();
    write_stdout(&json_line(&ConstantsOut::from(&cert)))?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_table(c_max: f64, format: Format, out: Option<&Path>) -> Result<ExitCode, Failure> {
    let rows = analysis::build_table(c_max)?;
    let content = match format {
        Format::Csv => table_csv(&rows),
        Format::Json => {
            let rows: Vec<SegmentOut> = rows.iter().map(SegmentOut::from).collect();
            json_line(&rows)
        }
    };
    emit(&content, out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_figure(
    d_max: u32,
    c_min: f64,
    c_max: f64,
    step: f64,
    out: Option<&Path>,
) -> Result<ExitCode, Failure> {
    if !(step > 0.0) {
        return Err(Failure::input("step: must be positive"));
    }
    if !(c_min > 0.0) {
        return Err(Failure::input("c-min: must be positive"));
    }
    if !(c_max >= c_min) {
        return Err(Failure::input("c-max: must be at least c-min"));
    }
    // inclusive endpoint with a guard against one-ulp shortfalls in the division
    let n = ((c_max - c_min) / step + 1e-9).floor() as usize + 1;
    let grid: Vec<f64> = (0..n).map(|i| c_min + i as f64 * step).collect();
    let points = analysis::figure_data(d_max, &grid)?;
    emit(&figure_csv(&points), out)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(suite: Suite, seed: u64, cap: usize) -> Result<ExitCode, Failure> {
    let report = verifier::run_suite(suite.into(), seed, cap)?;
    write_stdout(&json_line(&ReportOut::from(&report)))?;
    Ok(if report.all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn emit(content: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display()))),
        None => write_stdout(content),
    }
}

/// Writes to standard output, treating a closed pipe (e.g. `revratio figure |
/// head`) as a normal early end rather than an error.
fn write_stdout(content: &str) -> Result<(), Failure> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let result = out.write_all(content.as_bytes()).and_then(|()| out.flush());
    match result {
        Ok(()) => Ok(()),
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => std::process::exit(0),
        Err(e) => Err(Failure::input(format!("cannot write to stdout: {e}"))),
    }
}
