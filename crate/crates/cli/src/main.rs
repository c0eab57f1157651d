mod grid;
mod report;
mod suites;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cm_verify::Tolerance;

use grid::{Range, XList};
use report::{fmt_float, Entry, Report};
use suites::Options;

/// Numerical verification that 1/arctan is logarithmically completely
/// monotonic and not a Stieltjes transform.
#[derive(Parser, Debug)]
#[command(name = "cm-verify", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample the Bernstein density w(s) of g.
    Density(DensityArgs),
    /// Compare the Laplace representation of g with its closed form.
    VerifyRepresentation(SuiteArgs),
    /// Residue-theorem closure, residues, cut reconstruction and arc bounds.
    VerifyContour(SuiteArgs),
    /// CM sign table of g and log-CM table of 1/arctan.
    CheckCm(TableArgs),
    /// Bernstein sign table (default: arctan, which fails it).
    CheckBernstein(TableArgs),
    /// Witness that arctan is not Bernstein, hence 1/arctan is not Stieltjes.
    RefuteStieltjes(RefuteArgs),
    /// Auxiliary integral identities.
    VerifyIdentities(SuiteArgs),
    /// Every suite with its defaults.
    ReportAll(OutputArgs),
}

#[derive(Args, Debug)]
struct OutputArgs {
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Record wall time in the report (makes output run-dependent).
    #[arg(long)]
    timing: bool,
}

#[derive(Args, Debug)]
struct DensityArgs {
    /// lo:hi:count, inclusive.
    #[arg(long = "s", default_value = "0:50:501")]
    range: Range,
    /// Logarithmic spacing (needs lo > 0).
    #[arg(long)]
    log: bool,
    /// Absolute quadrature tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SuiteArgs {
    /// Comma-separated evaluation points.
    #[arg(long)]
    x: Option<XList>,
    /// Check tolerance.
    #[arg(long)]
    tol: Option<f64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct TableArgs {
    #[arg(long)]
    x: Option<XList>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(0..=24))]
    max_order: Option<u64>,
    #[arg(long, value_parser = suites::FUNCTION_NAMES)]
    function: Option<String>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct RefuteArgs {
    #[arg(long)]
    x: Option<XList>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=24))]
    max_order: Option<u64>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(v) = std::env::var("CM_VERIFY_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("CM_VERIFY_THREADS must be a positive integer, got `{v}`"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

/// `Ok(pass)`, or `Err` for usage and IO problems.
fn run(command: Command) -> Result<bool, String> {
    let start = Instant::now();
    let (report, output) = match command {
        Command::Density(a) => return density(a),
        Command::VerifyRepresentation(a) => (suites::representation(&suite_options(&a)?), a.output),
        Command::VerifyContour(a) => (suites::contour(&suite_options(&a)?), a.output),
        Command::VerifyIdentities(a) => (suites::identities(&suite_options(&a)?), a.output),
        Command::CheckCm(a) => (suites::check_cm(&table_options(a.x, a.max_order, a.function)), a.output),
        Command::CheckBernstein(a) => (suites::check_bernstein(&table_options(a.x, a.max_order, a.function)), a.output),
        Command::RefuteStieltjes(a) => (suites::refute_stieltjes(&table_options(a.x, a.max_order, None)), a.output),
        Command::ReportAll(o) => (suites::report_all(), o),
    };
    let mut report = report;
    if output.timing {
        report.seconds = Some(start.elapsed().as_secs_f64());
    }
    let pass = report.pass();
    emit(&output, Format::Json, |out, format| match format {
        Format::Json => report.write_json(out),
        Format::Csv => report.write_csv(out),
    })?;
    Ok(pass)
}

fn suite_options(a: &SuiteArgs) -> Result<Options, String> {
    if let Some(t) = a.tol {
        if !(t > 0.0 && t.is_finite()) {
            return Err(format!("--tol must be positive, got {t}"));
        }
    }
    Ok(Options {
        x: a.x.clone().map(|l| l.0),
        tol: a.tol,
        ..Options::default()
    })
}

fn table_options(x: Option<XList>, max_order: Option<u64>, function: Option<String>) -> Options {
    Options {
        x: x.map(|l| l.0),
        tol: None,
        max_order: max_order.map(|n| n as usize),
        function,
    }
}

fn density(a: DensityArgs) -> Result<bool, String> {
    let start = Instant::now();
    let points = a.range.points(a.log)?;
    let tol = Tolerance::new(a.tol, 1e-9, 1_000_000).map_err(|e| e.to_string())?;
    let results = suites::density(&points, &tol);
    let pass = results.iter().all(|r| matches!(r, Ok(p) if p.converged));
    let seconds = a.output.timing.then(|| start.elapsed().as_secs_f64());
    emit(&a.output, Format::Csv, |out, format| match format {
        Format::Csv => {
            writeln!(out, "s,w,err")?;
            for (s, r) in points.iter().zip(&results) {
                match r {
                    Ok(p) => writeln!(out, "{},{},{}", fmt_float(*s), fmt_float(p.w), fmt_float(p.err))?,
                    Err(_) => writeln!(out, "{},,", fmt_float(*s))?,
                }
            }
            Ok(())
        }
        Format::Json => {
            let entries = points
                .iter()
                .zip(&results)
                .map(|(s, r)| {
                    let name = format!("w(s={})", fmt_float(*s));
                    match r {
                        Ok(p) => Entry {
                            name,
                            target: None,
                            computed: Some(p.w),
                            tol: Some(p.err),
                            pass: p.converged,
                        },
                        Err(e) => Entry::failed(name, &e.to_string()),
                    }
                })
                .collect();
            let mut report = Report::new("density", entries);
            report.seconds = seconds;
            report.write_json(out)
        }
    })?;
    Ok(pass)
}

fn emit<F>(output: &OutputArgs, default: Format, write: F) -> Result<(), String>
where
    F: FnOnce(&mut dyn Write, Format) -> io::Result<()>,
{
    let format = output.format.unwrap_or(default);
    let result = match &output.out {
        Some(path) => {
            let file = File::create(path).map_err(|e| format!("cannot write {}: {e}", path.display()))?;
            let mut w = BufWriter::new(file);
            write(&mut w, format).and_then(|_| w.flush())
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            write(&mut w, format).and_then(|_| w.flush())
        }
    };
    result.map_err(|e| format!("write failed: {e}"))
}
