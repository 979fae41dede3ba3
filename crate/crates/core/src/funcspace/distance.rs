// SPDX-License-Identifier: Apache-2.0

use super::model::FunctionModel;
use crate::error::{Error, Result};

/// Offset used to probe jumps from both sides.
pub const JUMP_PROBE: f64 = 1e-9;

/// `sup_{x ∈ [0,T]} |F(x) − G(x)|`.
///
/// Exact for two piecewise-linear functions (the difference is linear
/// between merged breakpoints, so the supremum is reached at a breakpoint or
/// approached at a jump). Otherwise the maximum over `grid`, both
/// functions' breakpoints, jump abscissae `± 1e-9` and the endpoints.
pub fn sup_distance(f: &FunctionModel, g: &FunctionModel, grid: &[f64]) -> Result<f64> {
    let t = f.domain_end();
    if t != g.domain_end() {
        return Err(Error::domain(format!(
            "functions live on different domains [0, {t}] and [0, {}]",
            g.domain_end()
        )));
    }
    if let Some(&x) = grid.iter().find(|x| !(0.0..=t).contains(*x)) {
        return Err(Error::domain(format!("grid point {x} outside [0, {t}]")));
    }
    let mut xs: Vec<f64> = f.breakpoints().into_iter().chain(g.breakpoints()).collect();
    let both_linear = matches!(
        (f, g),
        (FunctionModel::PiecewiseLinear(_), FunctionModel::PiecewiseLinear(_))
    );
    if !both_linear {
        xs.extend_from_slice(grid);
        for j in f.jumps().into_iter().chain(g.jumps()) {
            xs.push((j - JUMP_PROBE).max(0.0));
            xs.push((j + JUMP_PROBE).min(t));
        }
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup();

    let mut sup = 0.0f64;
    for &x in &xs {
        sup = sup.max((f.eval_unchecked(x) - g.eval_unchecked(x)).abs());
        if both_linear && x > 0.0 {
            let l = (f.left_limit(x)? - g.left_limit(x)?).abs();
            sup = sup.max(l);
        }
    }
    Ok(sup)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_functions_are_at_distance_zero() {
        let f = FunctionModel::from_points(&[(0.0, 2.0), (0.3, 1.0), (1.0, 0.0)]).unwrap();
        assert_eq!(sup_distance(&f, &f, &[]).unwrap(), 0.0);
        let p = FunctionModel::power_complement(4).unwrap();
        assert_eq!(sup_distance(&p, &p, &[0.5]).unwrap(), 0.0);
    }

    #[test]
    fn constant_gap() {
        let a = FunctionModel::constant(0.2, 1.0).unwrap();
        let b = FunctionModel::zero(1.0).unwrap();
        assert_eq!(sup_distance(&a, &b, &[]).unwrap(), 0.2);
    }

    #[test]
    fn power_complement_stays_far_from_its_step_limit() {
        let lim = FunctionModel::upper_step(1.0, 1.0, 1.0, 0.0).unwrap();
        let grid: Vec<f64> = (0..=100).map(|i| i as f64 / 100.0).chain([1.0 - 1e-4]).collect();
        for n in [1, 3, 10, 100, 1000, 10_000] {
            let f = FunctionModel::power_complement(n).unwrap();
            assert!(sup_distance(&f, &lim, &grid).unwrap() >= 0.99, "n = {n}");
        }
    }

    #[test]
    fn exact_sup_sees_jumps_from_the_left() {
        let f = FunctionModel::from_json(
            r#"{"type":"piecewise_linear","T":1.0,"points":[[0,1],[1,0]],"jumps":[{"x":0.5,"left":1.0,"right":0.2}]}"#,
        )
        .unwrap();
        let g = FunctionModel::from_points(&[(0.0, 1.0), (0.5, 0.2), (1.0, 0.0)]).unwrap();
        assert!((sup_distance(&f, &g, &[]).unwrap() - 0.8).abs() < 1e-15);
    }

    #[test]
    fn mismatched_domains_are_rejected() {
        let a = FunctionModel::constant(1.0, 1.0).unwrap();
        let b = FunctionModel::constant(1.0, 2.0).unwrap();
        assert!(sup_distance(&a, &b, &[]).is_err());
        assert!(sup_distance(&a, &a, &[1.5]).is_err());
    }
}
