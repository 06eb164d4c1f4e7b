//! Library side of the `llspin` command: job specification, report schema
//! and the three commands.

pub mod commands;
pub mod error;
pub mod job;
pub mod report;

pub use commands::{check, inspect, render_selftest, selftest, verify, Outcome};
pub use error::{CliError, ExitCode};
pub use job::{JobSpec, Samples, TheoremSelector, THREADS_ENV};
pub use report::{Report, Summary, SCHEMA};
