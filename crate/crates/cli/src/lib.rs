//! Command-line front end for `logdisc-core`: single queries, `X/Y/E_m`
//! reports, resumable parallel sweeps persisted as JSONL, and re-checking
//! of sweep files.

pub mod cli;
pub mod record;
pub mod sweep;
pub mod verify;

pub use cli::{dispatch, run};
pub use record::{Status, SweepRecord};
pub use sweep::{run_sweep, Filter, SweepConfig, SweepError, SweepSummary};
pub use verify::{verify_file, VerifyReport};

pub const TOOL_VERSION: &str = concat!("logdisc ", env!("CARGO_PKG_VERSION"));
