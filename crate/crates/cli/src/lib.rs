//! Command-line front end: file formats, exit codes and subcommands.

pub mod commands;
pub mod error;
pub mod format;

pub use error::{exit, CliError};
