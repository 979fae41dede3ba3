// SPDX-License-Identifier: Apache-2.0

mod args;
mod commands;
mod config;
mod error;
mod output;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use impact_bundles::Exec;

use args::{Cli, Command};
use commands::Ctx;
use config::Config;
use error::CliResult;

fn run(cli: Cli) -> CliResult<()> {
    let cfg = Config::load(cli.config.as_deref())?;
    let sequential = cli.sequential || cfg.sequential.unwrap_or(false);
    let ctx = Ctx { cfg, exec: if sequential { Exec::Sequential } else { Exec::Parallel } };
    match &cli.command {
        Command::Measure(a) => commands::measure::run(a, &ctx),
        Command::Bundle(a) => commands::bundle::run(a, &ctx),
        Command::Ingest(a) => commands::ingest::run(a, &ctx),
        Command::Converge(a) => commands::converge::run(a, &ctx),
        Command::Classify(a) => commands::classify::run(a, &ctx),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
