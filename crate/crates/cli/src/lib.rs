//! Command-line surface of the simulator: JSON configuration, the
//! `simulate`/`dict`/`localize`/`probe`/`compare`/`sweep` verbs and their
//! CSV/JSON outputs.
//!
//! Exit codes: 0 success, 2 configuration or input error, 3 runtime error.

pub mod commands;
pub mod config;
pub mod error;

pub use commands::{run, Cli};
pub use config::ExperimentConfig;
pub use error::CliError;
