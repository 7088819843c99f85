//! Command-line frontend for `gradal-core`.

pub mod commands;
pub mod dsl;
pub mod error;

pub use commands::{Cli, Command, Output, Session};
pub use error::CliError;
