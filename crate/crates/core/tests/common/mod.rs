// SPDX-License-Identifier: Apache-2.0

#![allow(dead_code)]

use impact_bundles::FunctionModel;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// A random continuous nonincreasing piecewise-linear function, returned as
/// its knot list. Flat runs and zero tails occur with positive probability.
pub fn random_points(rng: &mut StdRng) -> Vec<(f64, f64)> {
    let t = 10f64.powf(rng.gen_range(-0.5..1.5));
    let k = rng.gen_range(2..=12);
    let mut xs: Vec<f64> = (0..k - 2).map(|_| rng.gen_range(0.0..t)).collect();
    xs.push(0.0);
    xs.push(t);
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let mut y = 10f64.powf(rng.gen_range(-1.0..2.5));
    let zero_tail = rng.gen_bool(0.25);
    let mut pts = Vec::with_capacity(xs.len());
    for (i, &x) in xs.iter().enumerate() {
        if i > 0 {
            y = if rng.gen_bool(0.15) { y } else { y * rng.gen_range(0.0..1.0) };
        }
        if zero_tail && i == xs.len() - 1 {
            y = 0.0;
        }
        pts.push((x, y));
    }
    pts
}

pub fn model(points: &[(f64, f64)]) -> FunctionModel {
    FunctionModel::from_points(points).unwrap()
}

/// Independent evaluation of the interpolant through `points`.
pub fn pl_eval(points: &[(f64, f64)], x: f64) -> f64 {
    for w in points.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if x <= x1 {
            return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
        }
    }
    points[points.len() - 1].1
}

/// Independent trapezoid integral of the interpolant from 0 to `x`.
pub fn pl_integral(points: &[(f64, f64)], x: f64) -> f64 {
    let mut acc = 0.0;
    for w in points.windows(2) {
        let ((x0, y0), (x1, _)) = (w[0], w[1]);
        if x <= x0 {
            break;
        }
        let b = x.min(x1);
        acc += 0.5 * (y0 + pl_eval(points, b)) * (b - x0);
    }
    acc
}

/// Midpoint Riemann sum with `panels` panels.
pub fn riemann(f: impl Fn(f64) -> f64, x: f64, panels: usize) -> f64 {
    let w = x / panels as f64;
    (0..panels).map(|i| f((i as f64 + 0.5) * w)).sum::<f64>() * w
}

/// A log-uniform θ at or above `theta0`, bounded away from 0 relative to the
/// scale `z0 / t` when `theta0` vanishes.
pub fn admissible_theta(rng: &mut StdRng, theta0: f64, z0: f64, t: f64) -> f64 {
    let base = if theta0 > 0.0 { theta0 } else { 1e-3 * z0 / t };
    base * 10f64.powf(rng.gen_range(0.0..3.0))
}
