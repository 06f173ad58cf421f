//! File formats and command-line front end for `gradmat-core`.

pub mod cli;
pub mod error;
pub mod format;

pub use cli::run;
pub use error::CliError;
