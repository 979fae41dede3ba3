// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::model::FunctionModel;
use crate::error::{Error, Result};

/// How the piecewise-linear model of ranked counts is closed at `x = N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tail {
    /// Keep the last count: `(N, c_N)`.
    #[default]
    Hold,
    /// Drop to zero: `(N, 0)`.
    Zero,
}

impl FromStr for Tail {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hold" => Ok(Tail::Hold),
            "zero" => Ok(Tail::Zero),
            _ => Err(Error::domain(format!("unknown tail {s:?}, expected hold or zero"))),
        }
    }
}

impl fmt::Display for Tail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tail::Hold => "hold",
            Tail::Zero => "zero",
        })
    }
}

/// Continuous model of ranked citation counts on `[0, N]`: count `c_i`
/// sits at abscissa `i − 1`, counts sorted nonincreasing first.
pub fn from_citations(counts: &[u64], tail: Tail) -> Result<FunctionModel> {
    if counts.is_empty() {
        return Err(Error::domain("no citation counts"));
    }
    let mut sorted = counts.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut points: Vec<(f64, f64)> = sorted.iter().enumerate().map(|(i, &c)| (i as f64, c as f64)).collect();
    let last = match tail {
        Tail::Hold => *sorted.last().expect("nonempty") as f64,
        Tail::Zero => 0.0,
    };
    points.push((sorted.len() as f64, last));
    FunctionModel::from_points(&points)
}
