// SPDX-License-Identifier: Apache-2.0

use impact_bundles::FunctionModel;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Knots of a random continuous nonincreasing piecewise-linear function,
/// with occasional flat runs and zero tails.
pub fn random_points(rng: &mut StdRng) -> Vec<(f64, f64)> {
    let t = 10f64.powf(rng.gen_range(-0.5..1.5));
    let k = rng.gen_range(2..=12);
    let mut xs: Vec<f64> = (0..k - 2).map(|_| rng.gen_range(0.0..t)).collect();
    xs.extend([0.0, t]);
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let mut y = 10f64.powf(rng.gen_range(-1.0..2.5));
    let zero_tail = rng.gen_bool(0.25);
    let last = xs.len() - 1;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            if i > 0 && !rng.gen_bool(0.15) {
                y *= rng.gen_range(0.0..1.0);
            }
            if zero_tail && i == last {
                y = 0.0;
            }
            (x, y)
        })
        .collect()
}

/// Like [`random_points`] but with knot spacing at least `t / (2k)` and
/// moderate values, so slopes stay bounded.
pub fn tame_points(rng: &mut StdRng, t: f64) -> Vec<(f64, f64)> {
    let k = rng.gen_range(2..=8);
    let mut y = rng.gen_range(0.1..10.0);
    (0..=k)
        .map(|i| {
            let jitter = if i == 0 || i == k { 0.0 } else { rng.gen_range(-0.25..0.25) };
            let p = ((i as f64 + jitter) / k as f64 * t, y);
            y *= rng.gen_range(0.0..1.0);
            p
        })
        .collect()
}

pub fn model(points: &[(f64, f64)]) -> FunctionModel {
    FunctionModel::from_points(points).unwrap()
}

pub fn pl_eval(points: &[(f64, f64)], x: f64) -> f64 {
    for w in points.windows(2) {
        let ((x0, y0), (x1, y1)) = (w[0], w[1]);
        if x <= x1 {
            return y0 + (y1 - y0) * (x - x0) / (x1 - x0);
        }
    }
    points[points.len() - 1].1
}

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

/// Midpoint Riemann sum over `[0, x]`.
pub fn riemann(f: impl Fn(f64) -> f64, x: f64, panels: usize) -> f64 {
    let w = x / panels as f64;
    (0..panels).map(|i| f((i as f64 + 0.5) * w)).sum::<f64>() * w
}

pub fn admissible_theta(rng: &mut StdRng, theta0: f64, z0: f64, t: f64) -> f64 {
    let base = if theta0 > 0.0 { theta0 } else { 1e-3 * z0 / t };
    base * 10f64.powf(rng.gen_range(0.0..3.0))
}

/// `Z(x / (1 + 1/n)) + w(x) / n`, built exactly on the union of knots.
pub fn dini_member(z: &[(f64, f64)], w: &[(f64, f64)], n: u64) -> FunctionModel {
    let t = z.last().unwrap().0;
    let s = 1.0 + 1.0 / n as f64;
    let mut xs: Vec<f64> = z.iter().map(|p| p.0 * s).filter(|&x| x < t).chain(w.iter().map(|p| p.0)).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let pts: Vec<(f64, f64)> = xs.iter().map(|&x| (x, pl_eval(z, x / s) + pl_eval(w, x) / n as f64)).collect();
    FunctionModel::from_points(&pts).unwrap()
}
