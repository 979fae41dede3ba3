// SPDX-License-Identifier: Apache-2.0

//! Parameter grids.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Linear,
    #[default]
    Log,
}

impl FromStr for Spacing {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Spacing::Linear),
            "log" => Ok(Spacing::Log),
            _ => Err(Error::domain(format!("unknown spacing {s:?}, expected linear or log"))),
        }
    }
}

impl fmt::Display for Spacing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Spacing::Linear => "linear",
            Spacing::Log => "log",
        })
    }
}

/// `count` points from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub min: f64,
    pub max: f64,
    pub count: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

impl GridSpec {
    pub fn linear(min: f64, max: f64, count: usize) -> Self {
        GridSpec { min, max, count, spacing: Spacing::Linear }
    }

    pub fn log(min: f64, max: f64, count: usize) -> Self {
        GridSpec { min, max, count, spacing: Spacing::Log }
    }

    /// The grid points; endpoints are reproduced exactly.
    pub fn points(&self) -> Result<Vec<f64>> {
        let GridSpec { min, max, count, spacing } = *self;
        if count < 2 {
            return Err(Error::domain(format!("grid needs at least 2 points, got {count}")));
        }
        if !(min.is_finite() && max.is_finite() && min < max) {
            return Err(Error::domain(format!("grid needs finite min < max, got [{min}, {max}]")));
        }
        let last = (count - 1) as f64;
        let mut pts: Vec<f64> = match spacing {
            Spacing::Linear => (0..count).map(|i| min + (max - min) * i as f64 / last).collect(),
            Spacing::Log => {
                if min <= 0.0 {
                    return Err(Error::domain(format!("log grid needs min > 0, got {min}")));
                }
                let (lo, hi) = (min.ln(), max.ln());
                (0..count).map(|i| (lo + (hi - lo) * i as f64 / last).exp()).collect()
            }
        };
        pts[0] = min;
        pts[count - 1] = max;
        Ok(pts)
    }
}

/// `count` uniform points on `[0, t]`.
pub fn uniform(t: f64, count: usize) -> Vec<f64> {
    GridSpec::linear(0.0, t, count).points().expect("valid uniform grid")
}

pub(crate) fn check_increasing(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::domain("empty grid"));
    }
    if let Some(w) = grid.windows(2).find(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less)) {
        return Err(Error::domain(format!("grid must strictly increase ({} then {})", w[0], w[1])));
    }
    Ok(())
}
