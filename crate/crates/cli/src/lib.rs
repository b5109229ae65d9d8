//! Command-line front end for `texgrain-core`: corpus scanning, feature
//! tables, model files and evaluation reports.

pub mod cli;
pub mod commands;
pub mod corpus;
pub mod error;
pub mod table;

pub use cli::Cli;
pub use commands::run;
pub use error::{CliError, CliResult};
