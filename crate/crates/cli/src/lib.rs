//! Batch front-end for the monact workbench: file formats, report
//! assembly and the pipelines behind each subcommand.

pub mod commands;
pub mod input;
pub mod report;

pub use report::{CliError, Outcome, Report};
