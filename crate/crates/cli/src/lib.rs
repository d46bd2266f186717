//! Subcommands of the `fricke` binary as library functions, so that reports
//! can be produced and compared in-process.
//!
//! Every report serializes with a `schema_version` and a `verdict`; the binary
//! exits with status 0 exactly when the verdict is `pass`.

pub mod commands;
pub mod config;
mod error;
pub mod report;

pub use commands::{
    cmd_certify, cmd_compare, cmd_ealg, cmd_induce, cmd_lower_bound, cmd_rho, cmd_trace,
};
pub use config::{load_automorphism, RunConfig};
pub use error::{CliError, Result};
pub use report::{render, Format, Report, Verdict};
