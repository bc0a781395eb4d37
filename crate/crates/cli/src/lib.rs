//! Experiment harness for the clt-transport library: named families,
//! parameter sweeps, report files and the checks run over them.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod assertions;
pub mod commands;
pub mod config;
pub mod error;
pub mod family;
pub mod lawspec;
pub mod report;
pub mod sweep;

pub use config::SweepConfig;
pub use error::{CliError, Result};
pub use sweep::{run_sweep, SweepOutcome, SweepRow, SweepSummary};
