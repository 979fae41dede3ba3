// SPDX-License-Identifier: Apache-2.0

mod common;

use common::*;
use impact_bundles::convergence::{verdict, Tolerances, Verdict};
use impact_bundles::grid::uniform;
use impact_bundles::{
    function_convergence, measure_convergence, run_scenarios, sup_distance, BundleKind, FamilySpec, FunctionModel,
    GridSpec,
};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::Rng;

const DINI_N: [u64; 7] = [1, 10, 100, 1_000, 10_000, 100_000, 1_000_000];

/// Nonincreasing knots with spacing at least `t / (2k)`.
fn tame_points(rng: &mut StdRng, t: f64) -> Vec<(f64, f64)> {
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

/// `Z(x / (1 + 1/n)) + w(x) / n` as an exact piecewise-linear function.
fn dini_member(z: &[(f64, f64)], w: &[(f64, f64)], n: u64) -> FunctionModel {
    let t = z.last().unwrap().0;
    let s = 1.0 + 1.0 / n as f64;
    let mut xs: Vec<f64> = z.iter().map(|p| p.0 * s).filter(|&x| x < t).chain(w.iter().map(|p| p.0)).collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let pts: Vec<(f64, f64)> = xs.iter().map(|&x| (x, pl_eval(z, x / s) + pl_eval(w, x) / n as f64)).collect();
    FunctionModel::from_points(&pts).unwrap()
}

#[test]
fn dini_families_converge_uniformly() {
    let mut rng = rng(31);
    for _ in 0..50 {
        let t = rng.gen_range(0.5..5.0);
        let (z, w) = (tame_points(&mut rng, t), tame_points(&mut rng, t));
        let limit = model(&z);
        let members: Vec<(u64, FunctionModel)> = DINI_N.iter().map(|&n| (n, dini_member(&z, &w, n))).collect();
        let sups: Vec<f64> = members.iter().map(|(_, m)| sup_distance(m, &limit, &[]).unwrap()).collect();
        assert!(sups.windows(2).all(|p| p[1] <= p[0] + 1e-15), "{sups:?}");
        assert!(*sups.last().unwrap() < 1e-3, "{sups:?}");

        let fam = FamilySpec::user(members, limit).unwrap();
        let r = function_convergence(&fam, &uniform(t, 101), &DINI_N).unwrap();
        assert_eq!(r.verdict, Verdict::UniformEvidence);
    }
}

#[test]
fn uniform_verdicts_imply_small_fixed_errors() {
    let fams = [
        FamilySpec::figure1(1.0, 1.0).unwrap(),
        FamilySpec::figure1(3.0, 2.0).unwrap(),
        FamilySpec::power_complement(),
        FamilySpec::constants("2+1/n".parse().unwrap(), 1.0).unwrap(),
    ];
    let n_list = [3, 10, 100, 1000, 10_000];
    for fam in &fams {
        let t = fam.domain_end();
        let grid = GridSpec::linear(0.05 * t, t, 25).points().unwrap();
        for kind in [BundleKind::I, BundleKind::Mu, BundleKind::P, BundleKind::G, BundleKind::H, BundleKind::M] {
            for probes in [false, true] {
                let r = measure_convergence(fam, &kind, &grid, &n_list, probes).unwrap();
                if r.verdict == Verdict::UniformEvidence {
                    assert!(r.last_fixed_max().unwrap_or(0.0) < r.tolerances.eps_u, "{} {}", fam.id(), kind);
                }
                for (k, row) in r.per_theta_errors.iter().enumerate() {
                    let sup = r.sup_errors[k];
                    for e in row.iter().flatten() {
                        assert!(sup.is_some_and(|s| s >= *e));
                    }
                }
            }
        }
    }
}

#[test]
fn reports_are_deterministic() {
    let fam = FamilySpec::figure1(1.0, 1.0).unwrap();
    let grid = GridSpec::log(0.01, 10.0, 30).points().unwrap();
    let a = measure_convergence(&fam, &BundleKind::G, &grid, &[3, 10, 100], true).unwrap();
    let b = measure_convergence(&fam, &BundleKind::G, &grid, &[3, 10, 100], true).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    let a = serde_json::to_string(&run_scenarios()).unwrap();
    let b = serde_json::to_string(&run_scenarios()).unwrap();
    assert_eq!(a, b);
}

fn error_table() -> impl Strategy<Value = (Vec<Vec<Option<f64>>>, Vec<Option<f64>>)> {
    (1usize..6, 1usize..8).prop_flat_map(|(rows, cols)| {
        prop::collection::vec(prop::collection::vec(prop::option::weighted(0.9, 0.0f64..1.0), cols), rows).prop_map(
            |per: Vec<Vec<Option<f64>>>| {
                let sup = per
                    .iter()
                    .map(|row| row.iter().flatten().copied().reduce(f64::max))
                    .collect();
                (per, sup)
            },
        )
    })
}

proptest! {
    #[test]
    fn shrinking_eps_never_creates_uniform_evidence(
        (per, sup) in error_table(),
        small in 1e-6f64..1e-1,
        ratio in 1.0f64..100.0,
    ) {
        let tight = Tolerances { eps_u: small, ..Tolerances::default() };
        let loose = Tolerances { eps_u: small * ratio, ..Tolerances::default() };
        if verdict(&per, &sup, &tight) == Verdict::UniformEvidence {
            prop_assert_eq!(verdict(&per, &sup, &loose), Verdict::UniformEvidence);
        }
    }
}
