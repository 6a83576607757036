//! File formats, DOT export, experiment sweeps and the command line for
//! `multiarc-core`.

pub mod cli;
pub mod dot;
pub mod dto;
pub mod error;
pub mod experiments;

pub use error::{CliError, CliResult};
