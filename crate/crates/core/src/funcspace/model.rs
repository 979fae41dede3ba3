// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use serde::{Deserialize, Serialize};

use super::json::FunctionSpec;
use super::piecewise::{Knot, PiecewiseLinear};
use crate::error::{Error, Result};

/// `x ↦ 1 − xⁿ` on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerComplement {
    n: u32,
}

impl PowerComplement {
    pub fn n(&self) -> u32 {
        self.n
    }
}

/// Constant `a` on `[0, T]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constant {
    a: f64,
    t: f64,
}

impl Constant {
    pub fn value(&self) -> f64 {
        self.a
    }
}

/// `high` on `[0, x0)` and `low` on `[x0, T]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpperStep {
    t: f64,
    x0: f64,
    high: f64,
    low: f64,
}

impl UpperStep {
    pub fn jump_at(&self) -> f64 {
        self.x0
    }
    pub fn high(&self) -> f64 {
        self.high
    }
    pub fn low(&self) -> f64 {
        self.low
    }
}

/// A nonnegative function on `[0, T]`, possibly with downward jumps.
///
/// Values stored at a jump abscissa are right limits; left limits are
/// available through [`FunctionModel::left_limit`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "FunctionSpec", into = "FunctionSpec")]
pub enum FunctionModel {
    PiecewiseLinear(PiecewiseLinear),
    PowerComplement(PowerComplement),
    Constant(Constant),
    UpperStep(UpperStep),
}

/// Why a function is not a member of the space of continuous,
/// nonincreasing, nonnegative functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Violation {
    Discontinuous { at: f64 },
    Increasing { at: f64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Discontinuous { at } => write!(f, "discontinuous at x = {at}"),
            Violation::Increasing { at } => write!(f, "increasing after x = {at}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Membership {
    Member,
    NotMember(Violation),
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member)
    }
}

fn check_end(t: f64) -> Result<()> {
    if !(t.is_finite() && t > 0.0) {
        return Err(Error::domain(format!("domain end T must be positive and finite, got {t}")));
    }
    Ok(())
}

fn check_value(name: &str, v: f64) -> Result<()> {
    if !(v.is_finite() && v >= 0.0) {
        return Err(Error::domain(format!("{name} must be finite and nonnegative, got {v}")));
    }
    Ok(())
}

impl FunctionModel {
    pub fn piecewise_linear(knots: Vec<Knot>) -> Result<Self> {
        PiecewiseLinear::new(knots).map(FunctionModel::PiecewiseLinear)
    }

    /// Continuous piecewise-linear function through `points`.
    pub fn from_points(points: &[(f64, f64)]) -> Result<Self> {
        PiecewiseLinear::from_points(points).map(FunctionModel::PiecewiseLinear)
    }

    pub fn power_complement(n: u32) -> Result<Self> {
        if n == 0 || n > i32::MAX as u32 {
            return Err(Error::domain(format!("power complement exponent out of range: {n}")));
        }
        Ok(FunctionModel::PowerComplement(PowerComplement { n }))
    }

    pub fn constant(a: f64, t: f64) -> Result<Self> {
        check_value("constant value", a)?;
        check_end(t)?;
        Ok(FunctionModel::Constant(Constant { a, t }))
    }

    /// The zero function on `[0, T]`.
    pub fn zero(t: f64) -> Result<Self> {
        Self::constant(0.0, t)
    }

    /// `high` on `[0, x0)`, `low` on `[x0, T]`; `x0` may equal `T`.
    pub fn upper_step(t: f64, x0: f64, high: f64, low: f64) -> Result<Self> {
        check_end(t)?;
        check_value("low", low)?;
        check_value("high", high)?;
        if !(x0 > 0.0 && x0 <= t) {
            return Err(Error::domain(format!("jump abscissa {x0} must lie in (0, {t}]")));
        }
        if high <= low {
            return Err(Error::domain(format!("step needs high > low, got {high} <= {low}")));
        }
        Ok(FunctionModel::UpperStep(UpperStep { t, x0, high, low }))
    }

    pub fn domain_end(&self) -> f64 {
        match self {
            FunctionModel::PiecewiseLinear(p) => p.domain_end(),
            FunctionModel::PowerComplement(_) => 1.0,
            FunctionModel::Constant(c) => c.t,
            FunctionModel::UpperStep(s) => s.t,
        }
    }

    fn check_x(&self, x: f64) -> Result<()> {
        let t = self.domain_end();
        if !(0.0..=t).contains(&x) {
            return Err(Error::domain(format!("x = {x} outside [0, {t}]")));
        }
        Ok(())
    }

    /// Value at `x`; at a jump this is the right limit.
    pub fn eval(&self, x: f64) -> Result<f64> {
        self.check_x(x)?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: f64) -> f64 {
        match self {
            FunctionModel::PiecewiseLinear(p) => p.eval_unchecked(x),
            FunctionModel::PowerComplement(p) => 1.0 - x.powi(p.n as i32),
            FunctionModel::Constant(c) => c.a,
            FunctionModel::UpperStep(s) => {
                if x < s.x0 {
                    s.high
                } else {
                    s.low
                }
            }
        }
    }

    /// `lim_{s → x⁻} F(s)` for `x` in `(0, T]`.
    pub fn left_limit(&self, x: f64) -> Result<f64> {
        self.check_x(x)?;
        if x == 0.0 {
            return Err(Error::domain("left limit undefined at x = 0"));
        }
        Ok(match self {
            FunctionModel::PiecewiseLinear(p) => p.left_limit_unchecked(x),
            FunctionModel::UpperStep(s) if x <= s.x0 => s.high,
            _ => self.eval_unchecked(x),
        })
    }

    /// `∫₀ˣ F(s) ds`, in closed form.
    pub fn cumulative(&self, x: f64) -> Result<f64> {
        self.check_x(x)?;
        Ok(self.cumulative_unchecked(x))
    }

    pub(crate) fn cumulative_unchecked(&self, x: f64) -> f64 {
        match self {
            FunctionModel::PiecewiseLinear(p) => p.cumulative_unchecked(x),
            FunctionModel::PowerComplement(p) => {
                let m = p.n as f64 + 1.0;
                x - x.powi(p.n as i32) * x / m
            }
            FunctionModel::Constant(c) => c.a * x,
            FunctionModel::UpperStep(s) => {
                if x <= s.x0 {
                    s.high * x
                } else {
                    s.high * s.x0 + s.low * (x - s.x0)
                }
            }
        }
    }

    /// Whether `F(x) < c`.
    ///
    /// For the power complement this is decided on `xⁿ` against `1 − c`
    /// directly, so values of `1 − xⁿ` that round to 1 are still classified
    /// correctly.
    pub fn value_below(&self, x: f64, c: f64) -> Result<bool> {
        self.check_x(x)?;
        Ok(match self {
            FunctionModel::PowerComplement(p) => {
                let gap = 1.0 - c;
                if gap < 0.0 {
                    true
                } else if x == 0.0 {
                    false
                } else if gap == 0.0 {
                    true
                } else {
                    p.n as f64 * x.ln() > gap.ln()
                }
            }
            _ => self.eval_unchecked(x) < c,
        })
    }

    /// Abscissae where the representation changes piece, endpoints included.
    pub fn breakpoints(&self) -> Vec<f64> {
        match self {
            FunctionModel::PiecewiseLinear(p) => p.knots().iter().map(|k| k.x).collect(),
            FunctionModel::PowerComplement(_) => vec![0.0, 1.0],
            FunctionModel::Constant(c) => vec![0.0, c.t],
            FunctionModel::UpperStep(s) if s.x0 < s.t => vec![0.0, s.x0, s.t],
            FunctionModel::UpperStep(s) => vec![0.0, s.t],
        }
    }

    /// Abscissae of downward jumps.
    pub fn jumps(&self) -> Vec<f64> {
        match self {
            FunctionModel::PiecewiseLinear(p) => {
                p.knots().iter().filter(|k| k.is_jump()).map(|k| k.x).collect()
            }
            FunctionModel::UpperStep(s) => vec![s.x0],
            _ => Vec::new(),
        }
    }

    pub fn is_continuous(&self) -> bool {
        self.jumps().is_empty()
    }

    /// First abscissa after which the function increases.
    pub fn first_increase(&self) -> Option<f64> {
        match self {
            FunctionModel::PiecewiseLinear(p) => p
                .knots()
                .windows(2)
                .find(|w| w[1].left > w[0].right)
                .map(|w| w[0].x),
            _ => None,
        }
    }

    /// Membership in the space of continuous, nonincreasing, nonnegative
    /// functions; reports the first violation by abscissa.
    pub fn is_in_u(&self) -> Membership {
        match self {
            FunctionModel::PiecewiseLinear(p) => {
                for w in p.knots().windows(2) {
                    if w[1].left > w[0].right {
                        return Membership::NotMember(Violation::Increasing { at: w[0].x });
                    }
                    if w[1].is_jump() {
                        return Membership::NotMember(Violation::Discontinuous { at: w[1].x });
                    }
                }
                Membership::Member
            }
            FunctionModel::UpperStep(s) => {
                Membership::NotMember(Violation::Discontinuous { at: s.x0 })
            }
            _ => Membership::Member,
        }
    }

    /// `F(0) == 0`, which for a nonincreasing nonnegative function means
    /// `F ≡ 0`.
    pub fn is_zero(&self) -> bool {
        self.eval_unchecked(0.0) == 0.0 && self.first_increase().is_none()
    }

    /// Value at the right end of the domain.
    pub fn end_value(&self) -> f64 {
        self.eval_unchecked(self.domain_end())
    }

    /// `∫₀ᵀ F`.
    pub fn total(&self) -> f64 {
        self.cumulative_unchecked(self.domain_end())
    }
}
