//! Files, caching, sweeps and the command line for `dbubble-core`.

pub mod cache;
pub mod cli;
pub mod error;
pub mod format;
pub mod sweep;

pub use error::{CliError, Result};
