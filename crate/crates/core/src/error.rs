// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

/// Errors raised by function models and impact measures.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// The defining equation of the measure has no solution for this
    /// function and parameter. `theta0` is the infimum of admissible
    /// parameters when the measure has one.
    #[error("{measure} not admissible: {reason}")]
    NotAdmissible {
        measure: &'static str,
        reason: String,
        theta0: Option<f64>,
    },

    #[error("{measure} requires a continuous function (jump at x = {at})")]
    ContinuityRequired { measure: &'static str, at: f64 },

    #[error("{measure} requires a nonincreasing function (increase after x = {at})")]
    NotDecreasing { measure: &'static str, at: f64 },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub fn is_not_admissible(&self) -> bool {
        matches!(self, Error::NotAdmissible { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
