//! File formats, subcommands and reports for the `aimage` binary.

pub mod commands;
pub mod formats;

pub use commands::{Options, Report, EXIT_ERROR, EXIT_FALSE, EXIT_OK};
