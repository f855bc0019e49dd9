//! File formats, plots and subcommands of the `flowtopo` tool.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod format;
pub mod io;
pub mod json;
pub mod oracle;
pub mod svg;

pub use error::{CliError, CliResult};

/// Runs a parsed command line.
pub fn run(cli: &cli::Cli) -> CliResult<()> {
    use cli::Command;
    match &cli.command {
        Command::Analyze(a) => commands::analyze(a),
        Command::PagerankSweep(a) => commands::pagerank_sweep(a),
        Command::Monomer(a) => commands::monomer(a),
        Command::Cycles(a) => commands::cycles(a),
        Command::OracleCheck(a) => commands::oracle_check(a),
    }
}
