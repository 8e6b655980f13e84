//! Range sweeps: a pool of workers classifies `n` values pulled from a
//! shared cursor while a single writer appends one JSONL record per `n`.

use std::collections::HashSet;
use std::fs::{File, OpenOptions};
use std::io::{self, BufRead, BufReader, LineWriter, Seek, SeekFrom, Write};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::time::{Duration, Instant};

use logdisc_core::{classify, Certificate, ClassifyConfig};
use thiserror::Error;

use crate::record::{Status, SweepRecord};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Filter {
    All,
    #[value(name = "mod4eq1")]
    Mod4Eq1,
    /// `n = k^2` with `k` odd.
    OddSquares,
}

impl Filter {
    pub fn accepts(self, n: u64) -> bool {
        match self {
            Filter::All => true,
            Filter::Mod4Eq1 => n % 4 == 1,
            Filter::OddSquares => {
                let k = n.isqrt();
                k * k == n && k % 2 == 1
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub from: u64,
    pub to: u64,
    pub filter: Filter,
    pub jobs: usize,
    pub max_witness_attempts: u64,
    pub exact_degree_cap: u64,
    pub out: PathBuf,
    pub resume: bool,
}

impl SweepConfig {
    pub fn new(from: u64, to: u64, out: impl Into<PathBuf>) -> Self {
        let defaults = ClassifyConfig::default();
        Self {
            from,
            to,
            filter: Filter::All,
            jobs: std::thread::available_parallelism().map_or(1, |n| n.get()),
            max_witness_attempts: defaults.max_witness_attempts,
            exact_degree_cap: defaults.exact_degree_cap,
            out: out.into(),
            resume: false,
        }
    }

    pub fn classify_config(&self) -> ClassifyConfig {
        ClassifyConfig {
            max_witness_attempts: self.max_witness_attempts,
            allow_exact_fallback: true,
            exact_degree_cap: self.exact_degree_cap,
        }
    }

    pub fn targets(&self) -> Vec<u64> {
        (self.from..=self.to)
            .filter(|&n| self.filter.accepts(n))
            .collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepSummary {
    pub certified: usize,
    pub unresolved: usize,
    pub counterexamples: usize,
    /// Already present in the output file when resuming.
    pub skipped: usize,
    pub wall: Duration,
}

impl SweepSummary {
    pub fn all_certified(&self) -> bool {
        self.unresolved == 0 && self.counterexamples == 0
    }
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("invalid sweep config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}:{line}: unreadable record: {reason}")]
    Corrupt {
        path: PathBuf,
        line: usize,
        reason: String,
    },
}

/// `n` values already recorded in `path`. A trailing line without a newline
/// is an interrupted write; it is cut off so appends start on a clean line.
fn recover_existing(path: &Path) -> Result<HashSet<u64>, SweepError> {
    let io_err = |source| SweepError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut done = HashSet::new();
    let file = match File::open(path) {
        Ok(f) => f,
        Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(done),
        Err(e) => return Err(io_err(e)),
    };
    let mut reader = BufReader::new(file);
    let mut complete_len = 0u64;
    let mut buf = String::new();
    let mut line_no = 0;
    loop {
        buf.clear();
        let read = reader.read_line(&mut buf).map_err(io_err)?;
        if read == 0 {
            break;
        }
        line_no += 1;
        if !buf.ends_with('\n') {
            break;
        }
        let text = buf.trim();
        if !text.is_empty() {
            let rec = SweepRecord::from_line(text).map_err(|e| SweepError::Corrupt {
                path: path.to_path_buf(),
                line: line_no,
                reason: e.to_string(),
            })?;
            done.insert(rec.n);
        }
        complete_len += read as u64;
    }
    let file = OpenOptions::new().write(true).open(path).map_err(io_err)?;
    if file.metadata().map_err(io_err)?.len() != complete_len {
        file.set_len(complete_len).map_err(io_err)?;
    }
    Ok(done)
}

fn classify_one(n: u64, cfg: &ClassifyConfig) -> SweepRecord {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| classify(n, cfg)));
    let ms = start.elapsed().as_millis() as u64;
    let unresolved = Certificate::Unresolved {
        witness_attempts: cfg.max_witness_attempts,
    };
    match outcome {
        Ok(Ok(cert)) => SweepRecord::new(n, cert, ms),
        Ok(Err(e)) => SweepRecord {
            diagnostic: Some(format!("classification failed: {e}")),
            ..SweepRecord::new(n, unresolved, ms)
        },
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            SweepRecord {
                diagnostic: Some(format!("worker panicked: {msg}")),
                ..SweepRecord::new(n, unresolved, ms)
            }
        }
    }
}

/// Classify every `n` in range that passes the filter, appending records
/// to `config.out`. Records arrive in completion order.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepSummary, SweepError> {
    run_sweep_with(config, |_| {})
}

/// As [`run_sweep`], calling `on_record` after each record is written.
pub fn run_sweep_with(
    config: &SweepConfig,
    mut on_record: impl FnMut(&SweepRecord),
) -> Result<SweepSummary, SweepError> {
    if config.from == 0 || config.from > config.to {
        return Err(SweepError::Config(format!(
            "need 1 <= from <= to, got {}..{}",
            config.from, config.to
        )));
    }
    if config.jobs == 0 {
        return Err(SweepError::Config("jobs must be at least 1".into()));
    }
    let start = Instant::now();
    let io_err = |source| SweepError::Io {
        path: config.out.clone(),
        source,
    };

    let done = if config.resume {
        recover_existing(&config.out)?
    } else {
        HashSet::new()
    };
    let mut file = OpenOptions::new()
        .create(true)
        .append(config.resume)
        .write(true)
        .truncate(!config.resume)
        .open(&config.out)
        .map_err(io_err)?;
    file.seek(SeekFrom::End(0)).map_err(io_err)?;
    let mut writer = LineWriter::new(file);

    let all = config.targets();
    let pending: Vec<u64> = all.iter().copied().filter(|n| !done.contains(n)).collect();
    let mut summary = SweepSummary {
        skipped: all.len() - pending.len(),
        ..SweepSummary::default()
    };
    let cfg = config.classify_config();
    let cursor = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<SweepRecord>();

    let write_result = std::thread::scope(|scope| {
        for _ in 0..config.jobs.min(pending.len().max(1)) {
            let tx = tx.clone();
            let (cursor, pending, cfg) = (&cursor, &pending, &cfg);
            scope.spawn(move || loop {
                let i = cursor.fetch_add(1, Ordering::Relaxed);
                let Some(&n) = pending.get(i) else { break };
                if tx.send(classify_one(n, cfg)).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        for rec in rx {
            writeln!(writer, "{}", rec.to_line())?;
            match rec.status {
                Status::Certified => summary.certified += 1,
                Status::Counterexample => summary.counterexamples += 1,
                Status::Unresolved => summary.unresolved += 1,
            }
            on_record(&rec);
        }
        writer.flush()
    });
    write_result.map_err(io_err)?;
    summary.wall = start.elapsed();
    Ok(summary)
}
