//! File formats, subcommands and the selftest suite behind the `mms`
//! command-line tool.

pub mod commands;
pub mod error;
pub mod io;
pub mod output;
pub mod selftest;

pub use error::{CliError, Result};
