// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::Deserialize;
use serde_json::Value;

use crate::error::{CliError, CliResult};

/// Defaults read from `--config`. Keys mirror the long flag names with
/// dashes replaced by underscores.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    #[serde(rename = "fn")]
    pub function: Option<Value>,
    pub kind: Option<String>,
    pub theta: Option<f64>,
    pub p: Option<f64>,
    pub phi: Option<f64>,
    pub ped_fn: Option<Value>,
    pub mf_threshold: Option<f64>,
    pub mf_low: Option<f64>,
    pub mf_high: Option<f64>,
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub count: Option<usize>,
    pub spacing: Option<String>,
    pub format: Option<String>,
    pub out: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    pub column: Option<usize>,
    pub tail: Option<String>,
    pub family: Option<String>,
    pub an: Option<String>,
    pub s: Option<f64>,
    pub t: Option<f64>,
    pub user_file: Option<PathBuf>,
    pub boundary_probes: Option<bool>,
    pub n_list: Option<Vec<u64>>,
    pub eps_u: Option<f64>,
    pub pointwise_factor: Option<f64>,
    pub sequential: Option<bool>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> CliResult<Self> {
        let Some(path) = path else {
            return Ok(Config::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::input(format!("invalid config {}: {e}", path.display())))
    }
}

/// Parses a config string with the same rules as the matching flag.
pub fn enum_value<E: ValueEnum>(key: &str, v: Option<&String>) -> CliResult<Option<E>> {
    v.map(|s| E::from_str(s, true).map_err(|_| CliError::input(format!("config key {key}: unknown value {s:?}"))))
        .transpose()
}

pub fn parsed<T: std::str::FromStr>(key: &str, v: Option<&String>) -> CliResult<Option<T>>
where
    T::Err: std::fmt::Display,
{
    v.map(|s| s.parse::<T>().map_err(|e| CliError::input(format!("config key {key}: {e}"))))
        .transpose()
}

/// Inline JSON when the argument looks like an object or array, else a path.
pub fn json_source(arg: &str) -> CliResult<String> {
    let trimmed = arg.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg).map_err(|e| CliError::input(format!("cannot read {arg}: {e}")))
}

/// Flag first, then the config value (a string path/inline JSON or an
/// embedded JSON object).
pub fn json_arg(flag: Option<&str>, cfg: Option<&Value>) -> CliResult<Option<String>> {
    match (flag, cfg) {
        (Some(s), _) => json_source(s).map(Some),
        (None, Some(Value::String(s))) => json_source(s).map(Some),
        (None, Some(v)) => Ok(Some(v.to_string())),
        (None, None) => Ok(None),
    }
}
