// SPDX-License-Identifier: Apache-2.0

mod common;

use common::*;
use impact_bundles::{sup_distance, FunctionModel};
use rand::Rng;

/// Random nonincreasing knots at multiples of `t / panels`.
fn lattice_points(rng: &mut rand::rngs::StdRng, t: f64, panels: u32) -> Vec<(f64, f64)> {
    let mut ticks: Vec<u32> = (0..rng.gen_range(0..10)).map(|_| rng.gen_range(1..panels)).collect();
    ticks.extend([0, panels]);
    ticks.sort_unstable();
    ticks.dedup();
    let mut y = rng.gen_range(0.5..50.0);
    ticks
        .iter()
        .map(|&k| {
            let p = (k as f64 / panels as f64 * t, y);
            y *= rng.gen_range(0.0..1.0);
            p
        })
        .collect()
}

#[test]
fn exact_sup_matches_dense_grid() {
    let mut rng = rng(21);
    let panels = 100_000;
    for _ in 0..50 {
        let t = rng.gen_range(0.5..20.0);
        let (fa, fb) = (model(&lattice_points(&mut rng, t, panels)), model(&lattice_points(&mut rng, t, panels)));
        // every knot is a grid point, so the grid maximum is the true maximum
        let brute = (0..=panels)
            .map(|i| {
                let x = i as f64 / panels as f64 * t;
                (fa.eval(x).unwrap() - fb.eval(x).unwrap()).abs()
            })
            .fold(0.0, f64::max);
        let exact = sup_distance(&fa, &fb, &[]).unwrap();
        assert!((exact - brute).abs() <= 1e-9 * (1.0 + brute), "{exact} vs {brute}");
    }
}

#[test]
fn sup_of_a_function_with_itself_is_zero() {
    let mut rng = rng(22);
    for _ in 0..50 {
        let f = model(&random_points(&mut rng));
        assert_eq!(sup_distance(&f, &f, &[]).unwrap(), 0.0);
    }
}

#[test]
fn sup_sees_jumps() {
    let step = FunctionModel::upper_step(1.0, 0.5, 1.0, 0.0).unwrap();
    let ramp = FunctionModel::from_points(&[(0.0, 1.0), (0.5, 1.0), (0.5 + 1e-6, 0.0), (1.0, 0.0)]).unwrap();
    let d = sup_distance(&step, &ramp, &[0.0, 1.0]).unwrap();
    assert!(d > 0.99, "{d}");
}
