//! File formats and command-line front end for `semiholo-core`.
#![deny(missing_docs)]

pub mod cli;
pub mod codebook;
pub mod config;
mod error;
pub mod expr;
pub mod literal;
pub mod report;
pub mod script;

pub use error::{CliError, Result};
