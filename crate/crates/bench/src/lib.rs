//! Experiment orchestration for the `ioaco` optimizer: decision-maker files,
//! experiment plans, resumable campaigns, result CSVs and reports.

pub mod campaign;
pub mod cli;
pub mod config;
pub mod dms;
pub mod error;
pub mod files;
pub mod plan;
pub mod report;
pub mod results;
pub mod seeds;

pub use error::{BenchError, Result};
