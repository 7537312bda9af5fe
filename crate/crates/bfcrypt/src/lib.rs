//! File formats, reports, a worker pool and the APN search behind the
//! `bfcrypt` command-line tool. The analysis itself lives in `bfcrypt-core`.

pub mod error;
pub mod format;
pub mod parallel;
pub mod report;
pub mod search;

pub use error::CliError;
