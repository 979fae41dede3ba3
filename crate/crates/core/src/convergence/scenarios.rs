// SPDX-License-Identifier: Apache-2.0

//! The canonical scenario suite. Each scenario runs a fixed family against
//! its limit and checks the expected convergence behaviour of one or more
//! bundles. Canonical parameters: `S = T = 1`, `n ∈ {3, 10, 10², 10³, 10⁴}`.

use std::f64::consts::{FRAC_PI_4, PI};

use serde::{Deserialize, Serialize};

use super::{ConvergenceReport, Harness, Verdict};
use crate::bundles::{mf_bundle, BundleKind, StepFSpec};
use crate::error::Result;
use crate::funcspace::{FamilySpec, FunctionModel};
use crate::grid::{uniform, GridSpec};
use crate::measures::{self, FSpec};

pub const DEFAULT_N_LIST: [u64; 5] = [3, 10, 100, 1000, 10_000];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Observation {
    pub label: String,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub label: String,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioResult {
    pub id: String,
    /// Expected behaviour.
    pub expected: String,
    pub observed: Vec<Observation>,
    pub checks: Vec<Check>,
    pub pass: bool,
    pub reports: Vec<ConvergenceReport>,
    /// Set when the scenario could not run to completion.
    pub error: Option<String>,
}

impl ScenarioResult {
    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }
}

#[derive(Default)]
struct Evidence {
    observed: Vec<Observation>,
    checks: Vec<Check>,
    reports: Vec<ConvergenceReport>,
}

impl Evidence {
    fn observe(&mut self, label: impl Into<String>, value: f64) {
        self.observed.push(Observation { label: label.into(), value });
    }

    fn check(&mut self, label: impl Into<String>, ok: bool) {
        self.checks.push(Check { label: label.into(), ok });
    }

    fn report(&mut self, r: ConvergenceReport) -> &ConvergenceReport {
        self.reports.push(r);
        self.reports.last().expect("just pushed")
    }

    /// Records the verdict and sup series of a report and checks the verdict.
    fn expect_verdict(&mut self, r: ConvergenceReport, expected: Verdict) {
        let label = format!("{} on {}", r.measure, r.family);
        for (n, s) in r.n_list.iter().zip(&r.sup_errors) {
            if let Some(s) = s {
                self.observe(format!("{label}: sup error n={n}"), *s);
            }
        }
        self.check(format!("{label}: verdict {} (expected {expected})", r.verdict), r.verdict == expected);
        self.report(r);
    }

    /// Checks that every fixed-grid error at the largest index is below `eps`.
    fn expect_pointwise(&mut self, r: ConvergenceReport) {
        let eps = r.tolerances.eps_u;
        let label = format!("{} on {}", r.measure, r.family);
        let last = r.last_fixed_max();
        if let Some(v) = last {
            self.observe(format!("{label}: max fixed-grid error at n={}", r.n_list.last().unwrap_or(&0)), v);
        }
        self.check(format!("{label}: fixed-grid errors below {eps} at largest n"), last.is_some_and(|v| v < eps));
        self.report(r);
    }

    fn finish(self, id: &str, expected: &str, err: Option<String>) -> ScenarioResult {
        let pass = err.is_none() && !self.checks.is_empty() && self.checks.iter().all(|c| c.ok);
        ScenarioResult {
            id: id.into(),
            expected: expected.into(),
            observed: self.observed,
            checks: self.checks,
            pass,
            reports: self.reports,
            error: err,
        }
    }
}

fn figure1() -> FamilySpec {
    FamilySpec::figure1(1.0, 1.0).expect("canonical parameters")
}

fn theta_grid() -> Vec<f64> {
    GridSpec::log(0.01, 10.0, 30).points().expect("valid grid")
}

fn constant_grid() -> Vec<f64> {
    GridSpec::log(0.5, 10.0, 20).points().expect("valid grid")
}

fn unit_grid(count: usize) -> Vec<f64> {
    uniform(1.0, count)
}

fn nonincreasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}

type ScenarioFn = fn(&Harness, &mut Evidence) -> Result<()>;

const SCENARIOS: [(&str, &str, ScenarioFn); 12] = [
    ("S1", "integrals over [0,T] of 1-x^n converge to the integral of the discontinuous limit", s1),
    ("S2", "decreasing functions with a continuous pointwise limit converge uniformly; 1-x^n does not", s2),
    ("S3", "g converges at fixed theta and obeys the error bound |g_n - g| <= |int_0^g (Z_n - Z)| / (theta g)", s3),
    ("S4", "h, h^(2), a generic PED measure and the polar function converge at fixed parameter", s4),
    ("S5", "percentiles converge at fixed theta, including towards a discontinuous limit", s5),
    ("S6", "R converges at fixed theta", s6),
    ("S7", "mu, I and g converge uniformly in theta on the figure-1 family", s7),
    ("S8", "constants a/n -> 0 converge uniformly, but g and h only pointwise in theta", s8),
    ("S9", "h converges pointwise but not uniformly in theta when theta0 = 0; h = S/(n theta) near the boundary", s9),
    ("S10", "R converges pointwise but not uniformly in theta when theta0 = 0", s10),
    ("S11", "Mf with a jump at the limit value does not converge at beta = 0.5", s11),
    ("S12", "M converges pointwise but not uniformly for constants, and fails at a jump of the limit", s12),
];

/// Runs every scenario with default settings.
pub fn run_scenarios() -> Vec<ScenarioResult> {
    run_scenarios_with(&Harness::default())
}

pub fn run_scenarios_with(harness: &Harness) -> Vec<ScenarioResult> {
    harness.exec.map(&SCENARIOS, |&(id, expected, run)| {
        let mut ev = Evidence::default();
        let err = run(harness, &mut ev).err().map(|e| e.to_string());
        ev.finish(id, expected, err)
    })
}

fn s1(h: &Harness, ev: &mut Evidence) -> Result<()> {
    let fam = FamilySpec::power_complement();
    let limit_total = measures::i_theta(&fam.limit, 1.0)?;
    let mut errs = Vec::new();
    for &n in &DEFAULT_N_LIST {
        let err = (measures::i_theta(&fam.member(n)?, 1.0)? - limit_total).abs();
        ev.observe(format!("|I_T(Z_n) - I_T(Z)| n={n}"), err);
        ev.check(format!("n={n}: error equals 1/(n+1)"), (err - 1.0 / (n as f64 + 1.0)).abs() <= 1e-12);
        errs.push(err);
    }
    let eps = h.tolerances.eps_u;
    ev.check("integral errors nonincreasing", nonincreasing(&errs));
    ev.check("integral error below eps at largest n", errs.last().is_some_and(|&e| e < eps));
    let r = h.measure_convergence(&fam, &BundleKind::I, &unit_grid(41), &DEFAULT_N_LIST, false)?;
    ev.expect_pointwise(r);
    Ok(())
}

fn s2(h: &Harness, ev: &mut Evidence) -> Result<()> {
    let fam = figure1();
    let r = h.function_convergence(&fam, &unit_grid(101), &DEFAULT_N_LIST)?;
    for (n, s) in r.n_list.iter().zip(&r.sup_errors) {
        let s = s.unwrap_or(f64::NAN);
        ev.check(format!("figure-1 sup distance n={n} equals S/n"), (s - 1.0 / *n as f64).abs() <= 1e-12);
    }
    ev.expect_verdict(r, Verdict::UniformEvidence);
    let r = h.function_convergence(&FamilySpec::power_complement(), &unit_grid(101), &DEFAULT_N_LIST)?;
    ev.expect_verdict(r, Verdict::PointwiseOnlyEvidence);
    Ok(())
}

fn s3(h: &Harness, ev: &mut Evidence) -> Result<()> {
    let fam = figure1();
    let grid = theta_grid();
    let r = h.measure_convergence(&fam, &BundleKind::G, &grid, &DEFAULT_N_LIST, false)?;
    ev.expect_pointwise(r);
    let mut worst = f64::NEG_INFINITY;
    for &n in &DEFAULT_N_LIST {
        let z = fam.member(n)?;
        for &th in &grid {
            let (Ok(gn), Ok(g)) = (measures::g_theta(&z, th), measures::g_theta(&fam.limit, th)) else {
                continue;
            };
            if g == 0.0 {
                continue;
            }
            let bound = (z.cumulative(g)? - fam.limit.cumulative(g)?).abs() / (th * g);
            worst = worst.max((gn - g).abs() - bound);
        }
    }
    ev.observe("max of |g_n - g| minus bound", worst);
    ev.check("g error bound holds at every admissible (n, theta)", worst <= 1e-12);
    Ok(())
}

fn s4(h: &Harness, ev: &mut Evidence) -> Result<()> {
    let fam = figure1();
    let grid = theta_grid();
    for kind in [BundleKind::H, BundleKind::Kosmulski { p: 2.0 }] {
        let r = h.measure_convergence(&fam, &kind, &grid, &DEFAULT_N_LIST, false)?;
        ev.expect_pointwise(r);
    }
    let eps = h.tolerances.eps_u;
    let curve = FSpec::piecewise_linear(vec![[0.0, 0.05], [0.4, 0.3], [1.0, 0.6]])?;
    let limit_ped = measures::ped_measure(&fam.limit, &curve)?;
    let mut ped_errs = Vec::new();
    for &n in &DEFAULT_N_LIST {
        ped_errs.push((measures::ped_measure(&fam.member(n)?, &curve)? - limit_ped).abs());
    }
    ev.observe("piecewise PED error at largest n", *ped_errs.last().unwrap_or(&f64::NAN));
    ev.check("piecewise PED error below eps at largest n", ped_errs.last().is_some_and(|&e| e < eps));
    for phi in [FRAC_PI_4, PI / 12.0] {
        let limit_rho = measures::polar(&fam.limit, phi)?;
        let mut last = f64::NAN;
        for &n in &DEFAULT_N_LIST {
            // small angles are inadmissible for the first members
            match measures::polar(&fam.member(n)?, phi) {
                Ok(rho) => last = (rho - limit_rho).abs(),
                Err(e) if e.is_not_admissible() => last = f64::NAN,
                Err(e) => return Err(e),
            }
        }
        ev.observe(format!("polar error phi={phi} at largest n"), last);
        ev.check(format!("polar error phi={phi} below eps at largest n"), last < eps);
    }
    Ok(())
}

fn s5(h: &Harness, ev: &mut Evidence) -> Result<()> {
    let fam = figure1();
    let grid = unit_grid(41);
    let r = h.measure_convergence(&fam, &BundleKind::P, &grid, &DEFAULT_N_LIST, false)?;
    let quarter = grid.iter().position(|&t| t == 0.25).expect("0.25 on the grid");
    let zero_on_first_half = r.per_theta_errors.iter().all(|row| {
        grid.iter().zip(row).filter(|(&t, _)| t <= 0.5).all(|(_, e)| *e == Some(0.0))
    });
    ev.check("P error at theta=0.25 is 0 for every n", r.per_theta_errors.iter().all(|row| row[quarter] == Some(0.0)));
    ev.check("P error vanishes on [0, T/2] for every n", zero_on_first_half);
    ev.expect_pointwise(r);
    let r = h.measure_convergence(&FamilySpec::power_complement(), &BundleKind::P, &unit_grid(101), &DEFAULT_N_LIST, false)?;
    ev.expect_pointwise(r);
    Ok(())
}

fn s6(h: &Harness, ev: &mut Evidence) -> Result<()> {
    let r = h.measure_convergence(&figure1(), &BundleKind::R, &theta_grid(), &DEFAULT_N_LIST, false)?;
    ev.expect_pointwise(r);
    Ok(())
}

fn s7(h: &Harness, ev: &mut Evidence) -> Result<()> {
    let fam = figure1();
    let eps = h.tolerances.eps_u;
    let mu = h.measure_convergence(&fam, &BundleKind::Mu, &unit_grid(41), &DEFAULT_N_LIST, false)?;
    ev.check("mu sup error below eps at largest n", mu.last_sup().is_some_and(|s| s < eps));
    ev.expect_verdict(mu, Verdict::UniformEvidence);
    let i = h.measure_convergence(&fam, &BundleKind::I, &unit_grid(41), &DEFAULT_N_LIST, false)?;
    ev.expect_verdict(i, Verdict::UniformEvidence);
    let g = h.measure_convergence(&fam, &BundleKind::G, &theta_grid(), &DEFAULT_N_LIST, true)?;
    ev.expect_verdict(g, Verdict::UniformEvidence);
    Ok(())
}

fn s8(h: &Harness, ev: &mut Evidence) -> Result<()> {
    let fam = FamilySpec::constants("1/n".parse()?, 1.0)?;
    let r = h.function_convergence(&fam, &unit_grid(11), &DEFAULT_N_LIST)?;
    ev.expect_verdict(r, Verdict::UniformEvidence);
    for kind in [BundleKind::G, BundleKind::H] {
        let r = h.measure_convergence(&fam, &kind, &constant_grid(), &DEFAULT_N_LIST, true)?;
        ev.expect_verdict(r, Verdict::PointwiseOnlyEvidence);
    }
    Ok(())
}

fn s9(h: &Harness, ev: &mut Evidence) -> Result<()> {
    let fam = figure1();
    let r = h.measure_convergence(&fam, &BundleKind::H, &theta_grid(), &DEFAULT_N_LIST, true)?;
    let eps = h.tolerances.eps_u;
    ev.check("h fixed-grid errors below eps at largest n", r.last_fixed_max().is_some_and(|v| v < eps));
    ev.check("h boundary-probed sup error >= 0.2 for every n", r.sup_errors.iter().all(|s| s.is_some_and(|s| s >= 0.2)));
    ev.expect_verdict(r, Verdict::PointwiseOnlyEvidence);
    let mut worst = 0.0f64;
    for n in [10u64, 100, 1000] {
        let z = fam.member(n)?;
        let t0 = 1.0 / n as f64;
        let t1 = 4.0 / (3.0 * n as f64);
        for j in 0..8 {
            let th = t0 + (t1 - t0) * j as f64 / 8.0;
            worst = worst.max((measures::h_theta(&z, th)? - 1.0 / (n as f64 * th)).abs());
        }
    }
    ev.observe("max |h_theta(Z_n) - S/(n theta)| below 4S/(3nT)", worst);
    ev.check("h equals S/(n theta) near the admissibility boundary", worst <= 1e-12);
    Ok(())
}

fn s10(h: &Harness, ev: &mut Evidence) -> Result<()> {
    let r = h.measure_convergence(&figure1(), &BundleKind::R, &theta_grid(), &DEFAULT_N_LIST, true)?;
    ev.expect_verdict(r, Verdict::PointwiseOnlyEvidence);
    Ok(())
}

fn s11(h: &Harness, ev: &mut Evidence) -> Result<()> {
    let fam = FamilySpec::power_complement();
    let step = StepFSpec::indicator(1.0);
    let beta = 0.5;
    let mut values = Vec::new();
    for &n in &DEFAULT_N_LIST {
        let v = mf_bundle(&fam.member(n)?, &step, beta)?;
        ev.observe(format!("Mf(Z_n) n={n}"), v);
        values.push(v);
    }
    let limit_value = mf_bundle(&fam.limit, &step, beta)?;
    ev.observe("Mf(Z)", limit_value);
    ev.check("Mf(Z_n) = 0 for every n", values.iter().all(|&v| v == 0.0));
    ev.check("Mf(Z) = 1", limit_value == 1.0);
    let r = h.measure_convergence(&fam, &BundleKind::Mf { f: step }, &[0.25, 0.5, 0.75], &DEFAULT_N_LIST, false)?;
    ev.expect_verdict(r, Verdict::NoConvergenceEvidence);
    Ok(())
}

/// Continuous members dropping linearly from 1 to 0 on `[1/2 − 1/(2n), 1/2]`;
/// the pointwise limit is 1 on `[0, 1/2)` and 0 on `[1/2, 1]`.
fn steep_step_family() -> Result<FamilySpec> {
    let members = DEFAULT_N_LIST
        .iter()
        .map(|&n| {
            let start = 0.5 - 0.5 / n as f64;
            Ok((n, FunctionModel::from_points(&[(0.0, 1.0), (start, 1.0), (0.5, 0.0), (1.0, 0.0)])?))
        })
        .collect::<Result<Vec<_>>>()?;
    FamilySpec::user(members, FunctionModel::upper_step(1.0, 0.5, 1.0, 0.0)?)
}

fn s12(h: &Harness, ev: &mut Evidence) -> Result<()> {
    let fam = FamilySpec::constants("1+1/n".parse()?, 1.0)?;
    let probe = |n: u64, _: &FunctionModel| Some(1.0 / n as f64);
    let r = h.measure_convergence_probed(&fam, &BundleKind::M, &GridSpec::linear(0.5, 1.0, 11).points()?, &DEFAULT_N_LIST, &probe)?;
    ev.check(
        "M error at theta = 1/n stays at 1",
        r.probe_errors.iter().all(|e| e.is_some_and(|e| (e - 1.0).abs() < 1e-9)),
    );
    ev.expect_verdict(r, Verdict::PointwiseOnlyEvidence);

    let steps = steep_step_family()?;
    let r = h.measure_convergence(&steps, &BundleKind::M, &[0.25, 0.5, 0.75], &DEFAULT_N_LIST, false)?;
    let at_jump: Vec<Option<f64>> = r.per_theta_errors.iter().map(|row| row[1]).collect();
    ev.check("M error at the jump stays at 2 for every n", at_jump.iter().all(|e| *e == Some(2.0)));
    ev.expect_verdict(r, Verdict::NoConvergenceEvidence);
    Ok(())
}
