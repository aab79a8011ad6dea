//! File formats, parallel experiment drivers and the `cyclic-rips` command.

pub mod args;
pub mod commands;
pub mod error;
pub mod experiments;
pub mod input;
pub mod output;

pub use error::{CliError, Result};
