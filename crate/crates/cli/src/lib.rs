//! Command-line front end: configuration documents and subcommand dispatch.

pub mod config;
pub mod run;

pub use config::{parse_config, parse_document, render, ConfigError, Document};
pub use run::{execute, Cli, Command, Kind, RunOutcome, RunSpec};
