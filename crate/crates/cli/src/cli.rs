//! Argument parsing and subcommand dispatch.
//!
//! Exit codes: 0 success, 1 usage error, 2 computational or I/O failure,
//! 3 invalid certificate found by `verify`, 4 counterexample or unresolved
//! record present.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use logdisc_core::{classify, logpoly, ClassifyConfig};

use crate::record::{Status, SweepRecord};
use crate::sweep::{run_sweep, Filter, SweepConfig, SweepError};
use crate::verify::verify_file;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_OPEN: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "logdisc",
    version,
    about = "Discriminants of truncated logarithm polynomials"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, clap::Args)]
struct ClassifyArgs {
    /// Primes above n to try as non-residue witnesses.
    #[arg(long, default_value_t = 200)]
    max_witness_attempts: u64,
    /// Largest n for which the exact square test may be used.
    #[arg(long, default_value_t = 1000)]
    exact_degree_cap: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// disc(F_n), exactly or modulo a prime l > n.
    Disc {
        n: u64,
        #[arg(long = "mod", value_name = "L", conflicts_with = "exact")]
        modulus: Option<u64>,
        #[arg(long)]
        exact: bool,
    },
    /// P_n, exactly or modulo a prime.
    Pn {
        n: u64,
        #[arg(long = "mod", value_name = "L")]
        modulus: Option<u64>,
    },
    /// X(m), Y(m) and the exceptional set E_m.
    Xy { m: u64 },
    /// Certificate for a single n, as a JSON record.
    Classify {
        n: u64,
        #[command(flatten)]
        opts: ClassifyArgs,
        /// Never fall back to the exact square test.
        #[arg(long)]
        no_exact_fallback: bool,
    },
    /// Classify a range of n, appending JSONL records.
    Sweep {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, value_enum, default_value = "all")]
        filter: Filter,
        /// Worker threads; defaults to the available parallelism.
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long)]
        out: PathBuf,
        /// Skip n already recorded in the output file.
        #[arg(long)]
        resume: bool,
        #[command(flatten)]
        opts: ClassifyArgs,
    },
    /// Re-check every certificate in a sweep file.
    Verify { path: PathBuf },
}

/// Parse `args` (including the program name) and run, writing to the
/// given streams. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{text}");
            } else {
                let _ = write!(out, "{text}");
            }
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Compute(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_FAILURE
        }
    }
}

pub fn dispatch<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(args, &mut stdout.lock(), &mut stderr.lock())
}

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<logdisc_core::Error> for Failure {
    fn from(e: logdisc_core::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Compute(e.to_string())
    }
}

fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Disc { n, modulus, .. } => {
            if n == 0 {
                return Err(Failure::Usage("n must be positive".into()));
            }
            match modulus {
                Some(l) => writeln!(out, "{}", logpoly::disc_mod(n, l)?)?,
                None => {
                    let report = logpoly::disc_exact(n)?;
                    writeln!(out, "{}", report.exact.expect("exact requested"))?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Pn { n, modulus } => {
            if n < 2 {
                return Err(Failure::Usage("P_n needs n >= 2".into()));
            }
            match modulus {
                Some(l) => writeln!(out, "{}", logpoly::p_n_mod(n, l)?)?,
                None => writeln!(out, "{}", logpoly::p_n_exact(n)?)?,
            }
            Ok(EXIT_OK)
        }
        Command::Xy { m } => {
            if m < 2 {
                return Err(Failure::Usage("m must be at least 2".into()));
            }
            let profile = logpoly::exceptional_set(m)?;
            let e: Vec<String> = profile.exceptional.iter().map(|p| p.to_string()).collect();
            writeln!(out, "X={}", profile.x)?;
            writeln!(out, "Y={}", profile.y)?;
            writeln!(out, "E={{{}}}", e.join(","))?;
            Ok(EXIT_OK)
        }
        Command::Classify {
            n,
            opts,
            no_exact_fallback,
        } => {
            if n == 0 {
                return Err(Failure::Usage("n must be positive".into()));
            }
            let cfg = ClassifyConfig {
                max_witness_attempts: opts.max_witness_attempts,
                allow_exact_fallback: !no_exact_fallback,
                exact_degree_cap: opts.exact_degree_cap,
            };
            let start = std::time::Instant::now();
            let cert = classify(n, &cfg)?;
            let rec = SweepRecord::new(n, cert, start.elapsed().as_millis() as u64);
            writeln!(out, "{}", rec.to_line())?;
            Ok(if rec.status == Status::Certified {
                EXIT_OK
            } else {
                EXIT_OPEN
            })
        }
        Command::Sweep {
            from,
            to,
            filter,
            jobs,
            out: path,
            resume,
            opts,
        } => {
            let mut cfg = SweepConfig::new(from, to, path);
            cfg.filter = filter;
            if let Some(j) = jobs {
                cfg.jobs = j;
            }
            cfg.resume = resume;
            cfg.max_witness_attempts = opts.max_witness_attempts;
            cfg.exact_degree_cap = opts.exact_degree_cap;
            let summary = run_sweep(&cfg).map_err(|e| match e {
                SweepError::Config(m) => Failure::Usage(m),
                other => Failure::Compute(other.to_string()),
            })?;
            writeln!(
                out,
                "certified={} unresolved={} counterexamples={} skipped={} wall_ms={}",
                summary.certified,
                summary.unresolved,
                summary.counterexamples,
                summary.skipped,
                summary.wall.as_millis()
            )?;
            Ok(if summary.all_certified() {
                EXIT_OK
            } else {
                EXIT_OPEN
            })
        }
        Command::Verify { path } => {
            let report = verify_file(&path)
                .map_err(|e| Failure::Compute(format!("{}: {e}", path.display())))?;
            for (line, why) in &report.malformed {
                writeln!(err, "line {line}: malformed record: {why}")?;
            }
            for (n, why) in &report.invalid {
                writeln!(err, "n={n}: invalid: {why}")?;
            }
            for n in &report.unresolved {
                writeln!(err, "n={n}: unresolved")?;
            }
            for n in &report.counterexamples {
                writeln!(err, "n={n}: counterexample")?;
            }
            writeln!(
                out,
                "records={} valid={} invalid={} malformed={} unresolved={} counterexamples={}",
                report.records,
                report.valid,
                report.invalid.len(),
                report.malformed.len(),
                report.unresolved.len(),
                report.counterexamples.len()
            )?;
            Ok(if report.has_invalid() {
                EXIT_INVALID
            } else if report.has_open_cases() {
                EXIT_OPEN
            } else {
                EXIT_OK
            })
        }
    }
}
