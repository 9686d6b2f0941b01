//! Command-line harness around the `hahn_lsq` library.

pub mod commands;
pub mod config;
pub mod error;
pub mod table;

use std::io::Write;

pub use config::{Cli, Command, ExperimentConfig, Format, NodeRule, Nodes};
pub use error::{CliError, Result};
pub use table::{Cell, Table};

/// Runs the configured command and renders its table.
pub fn run(config: &ExperimentConfig) -> Result<String> {
    let table = commands::execute(config)?;
    Ok(match config.format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(config.to_json()),
    })
}

/// Validates, runs and writes to `--out` or stdout.
pub fn main_with(cli: Cli) -> Result<()> {
    let config = ExperimentConfig::from_cli(cli)?;
    let text = run(&config)?;
    match &config.out {
        Some(path) => std::fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}
