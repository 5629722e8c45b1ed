//! Command-line surface over `diophlab-core`: JSON input formats, CSV and
//! JSON output, one module per subcommand family, and the acceptance
//! criteria that `selftest` and the integration tests run.

pub mod acceptance;
pub mod commands;
pub mod config;
pub mod emit;
pub mod error;
pub mod input;

pub use error::CliError;
