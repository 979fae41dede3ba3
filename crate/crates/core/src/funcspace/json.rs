// SPDX-License-Identifier: Apache-2.0

//! JSON function specifications.
//!
//! ```json
//! {"type":"piecewise_linear","T":1.0,"points":[[0,1],[1,0]],"jumps":[{"x":0.5,"left":1.0,"right":0.2}]}
//! {"type":"power_complement","n":5}
//! {"type":"constant","a":2.0,"T":10.0}
//! {"type":"upper_step","T":1.0,"x0":0.5,"high":1.0,"low":0.0}
//! ```

use serde::{Deserialize, Serialize};

use super::model::FunctionModel;
use super::piecewise::{Knot, PiecewiseLinear};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JumpSpec {
    pub x: f64,
    pub left: f64,
    pub right: f64,
}

/// Wire form of a [`FunctionModel`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FunctionSpec {
    PiecewiseLinear {
        #[serde(rename = "T")]
        t: f64,
        points: Vec<[f64; 2]>,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        jumps: Vec<JumpSpec>,
    },
    PowerComplement {
        n: u32,
    },
    Constant {
        a: f64,
        #[serde(rename = "T")]
        t: f64,
    },
    UpperStep {
        #[serde(rename = "T")]
        t: f64,
        x0: f64,
        high: f64,
        low: f64,
    },
}

fn merge_knots(t: f64, points: &[[f64; 2]], jumps: &[JumpSpec]) -> Result<Vec<Knot>> {
    let mut knots: Vec<Knot> = points.iter().map(|p| Knot::new(p[0], p[1])).collect();
    for j in jumps {
        match knots.iter_mut().find(|k| k.x == j.x) {
            Some(k) if k.right == j.right => *k = Knot::jump(j.x, j.left, j.right),
            Some(k) => {
                return Err(Error::domain(format!(
                    "jump at x = {} conflicts with point value {}",
                    j.x, k.right
                )))
            }
            None => knots.push(Knot::jump(j.x, j.left, j.right)),
        }
    }
    knots.sort_by(|a, b| a.x.total_cmp(&b.x));
    match knots.last() {
        Some(k) if k.x == t => Ok(knots),
        Some(k) => Err(Error::domain(format!("last breakpoint {} differs from T = {t}", k.x))),
        None => Err(Error::domain("no breakpoints")),
    }
}

impl TryFrom<FunctionSpec> for FunctionModel {
    type Error = Error;

    fn try_from(spec: FunctionSpec) -> Result<Self> {
        match spec {
            FunctionSpec::PiecewiseLinear { t, points, jumps } => {
                PiecewiseLinear::new(merge_knots(t, &points, &jumps)?).map(FunctionModel::PiecewiseLinear)
            }
            FunctionSpec::PowerComplement { n } => FunctionModel::power_complement(n),
            FunctionSpec::Constant { a, t } => FunctionModel::constant(a, t),
            FunctionSpec::UpperStep { t, x0, high, low } => FunctionModel::upper_step(t, x0, high, low),
        }
    }
}

impl From<&FunctionModel> for FunctionSpec {
    fn from(model: &FunctionModel) -> Self {
        match model {
            FunctionModel::PiecewiseLinear(p) => {
                let (jumps, points): (Vec<&Knot>, Vec<&Knot>) = p.knots().iter().partition(|k| k.is_jump());
                FunctionSpec::PiecewiseLinear {
                    t: p.domain_end(),
                    points: points.iter().map(|k| [k.x, k.right]).collect(),
                    jumps: jumps
                        .iter()
                        .map(|k| JumpSpec { x: k.x, left: k.left, right: k.right })
                        .collect(),
                }
            }
            FunctionModel::PowerComplement(p) => FunctionSpec::PowerComplement { n: p.n() },
            FunctionModel::Constant(c) => FunctionSpec::Constant { a: c.value(), t: model.domain_end() },
            FunctionModel::UpperStep(s) => FunctionSpec::UpperStep {
                t: model.domain_end(),
                x0: s.jump_at(),
                high: s.high(),
                low: s.low(),
            },
        }
    }
}

impl From<FunctionModel> for FunctionSpec {
    fn from(model: FunctionModel) -> Self {
        FunctionSpec::from(&model)
    }
}

impl FunctionModel {
    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("function specs always serialize")
    }
}
