// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::process::ExitCode;

/// Failure of a subcommand, mapped onto the exit-code contract.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input. Exit 1.
    Input(String),
    /// The measure is not defined for this function and parameter. Exit 2.
    NotAdmissible(String),
    /// One or more scenarios failed. Exit 3.
    ScenarioFailure(String),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Input(_) => 1,
            CliError::NotAdmissible(_) => 2,
            CliError::ScenarioFailure(_) => 3,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::NotAdmissible(m) | CliError::ScenarioFailure(m) => f.write_str(m),
        }
    }
}

impl From<impact_bundles::Error> for CliError {
    fn from(e: impact_bundles::Error) -> Self {
        match &e {
            impact_bundles::Error::NotAdmissible { theta0: Some(t0), .. } => {
                CliError::NotAdmissible(format!("{e}; smallest admissible theta (theta0) = {t0:?}"))
            }
            impact_bundles::Error::NotAdmissible { .. } => CliError::NotAdmissible(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Input(format!("invalid JSON: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Input(format!("invalid CSV: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
