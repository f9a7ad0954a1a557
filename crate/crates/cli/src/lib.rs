//! Command implementations behind the `qdel` binary.

pub mod commands;
pub mod config;
pub mod error;
pub mod output;

pub use crate::error::{exit, CliError, CliResult};
