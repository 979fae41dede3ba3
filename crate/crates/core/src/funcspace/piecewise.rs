// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};

/// A breakpoint of a piecewise-linear function.
///
/// `right` is the stored value at `x` (the right limit); `left` is the left
/// limit. They differ only at a downward jump.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Knot {
    pub x: f64,
    pub left: f64,
    pub right: f64,
}

impl Knot {
    pub fn new(x: f64, y: f64) -> Self {
        Knot { x, left: y, right: y }
    }

    pub fn jump(x: f64, left: f64, right: f64) -> Self {
        Knot { x, left, right }
    }

    pub fn is_jump(&self) -> bool {
        self.left != self.right
    }
}

/// Piecewise-linear function on `[0, T]`, linear between consecutive knots.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinear {
    knots: Vec<Knot>,
    /// `prefix[i]` is the integral over `[0, knots[i].x]`.
    prefix: Vec<f64>,
}

impl PiecewiseLinear {
    /// Validates and builds the function. Requirements: at least two knots,
    /// first at 0, strictly increasing abscissae, finite nonnegative values,
    /// and `left >= right` at every knot.
    pub fn new(mut knots: Vec<Knot>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::domain("piecewise-linear function needs at least two breakpoints"));
        }
        for k in &knots {
            if !(k.x.is_finite() && k.left.is_finite() && k.right.is_finite()) {
                return Err(Error::domain(format!("non-finite breakpoint at x = {}", k.x)));
            }
            if k.left < 0.0 || k.right < 0.0 {
                return Err(Error::domain(format!("negative value at x = {}", k.x)));
            }
            if k.left < k.right {
                return Err(Error::domain(format!(
                    "upward jump at x = {} (left {} < right {})",
                    k.x, k.left, k.right
                )));
            }
        }
        if knots[0].x != 0.0 {
            return Err(Error::domain("first breakpoint must be at x = 0"));
        }
        if let Some(w) = knots.windows(2).find(|w| w[0].x >= w[1].x) {
            return Err(Error::domain(format!(
                "breakpoints must strictly increase (x = {} then {})",
                w[0].x, w[1].x
            )));
        }
        // the left limit at 0 is meaningless
        knots[0].left = knots[0].right;

        let mut prefix = Vec::with_capacity(knots.len());
        prefix.push(0.0);
        let mut acc = 0.0;
        for w in knots.windows(2) {
            acc += 0.5 * (w[1].x - w[0].x) * (w[0].right + w[1].left);
            prefix.push(acc);
        }
        Ok(PiecewiseLinear { knots, prefix })
    }

    /// Continuous function through `(x, y)` points.
    pub fn from_points(points: &[(f64, f64)]) -> Result<Self> {
        Self::new(points.iter().map(|&(x, y)| Knot::new(x, y)).collect())
    }

    pub fn knots(&self) -> &[Knot] {
        &self.knots
    }

    pub fn domain_end(&self) -> f64 {
        self.knots[self.knots.len() - 1].x
    }

    pub(crate) fn prefix(&self) -> &[f64] {
        &self.prefix
    }

    /// Index `i` of the segment `[x_i, x_{i+1}]` containing `x`, with the
    /// last segment closed on the right.
    fn segment(&self, x: f64) -> usize {
        let i = self.knots.partition_point(|k| k.x <= x);
        i.saturating_sub(1).min(self.knots.len() - 2)
    }

    pub(crate) fn eval_unchecked(&self, x: f64) -> f64 {
        let i = self.segment(x);
        let (a, b) = (&self.knots[i], &self.knots[i + 1]);
        if x == a.x {
            return a.right;
        }
        if x == b.x {
            return b.right;
        }
        a.right + (b.left - a.right) * (x - a.x) / (b.x - a.x)
    }

    pub(crate) fn left_limit_unchecked(&self, x: f64) -> f64 {
        let i = self.knots.partition_point(|k| k.x < x);
        if i < self.knots.len() && self.knots[i].x == x {
            return self.knots[i].left;
        }
        self.eval_unchecked(x)
    }

    pub(crate) fn cumulative_unchecked(&self, x: f64) -> f64 {
        let i = self.segment(x);
        let (a, b) = (&self.knots[i], &self.knots[i + 1]);
        if x == b.x {
            return self.prefix[i + 1];
        }
        let y = a.right + (b.left - a.right) * (x - a.x) / (b.x - a.x);
        self.prefix[i] + 0.5 * (x - a.x) * (a.right + y)
    }

    /// Slope of segment `i`.
    pub(crate) fn slope(&self, i: usize) -> f64 {
        let (a, b) = (&self.knots[i], &self.knots[i + 1]);
        (b.left - a.right) / (b.x - a.x)
    }
}
