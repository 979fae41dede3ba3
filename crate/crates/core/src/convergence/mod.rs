// SPDX-License-Identifier: Apache-2.0

//! Numerical convergence experiments: error tables of function families and
//! their bundle curves against declared limits, heuristic verdicts, and the
//! canonical scenario suite with its bundle classification.

mod classify;
mod report;
mod scenarios;

pub use classify::{classify, Classification, ClassRow, Region};
pub use report::{verdict, ConvergenceReport, Tolerances, Verdict};
pub use scenarios::{run_scenarios, run_scenarios_with, Check, Observation, ScenarioResult, DEFAULT_N_LIST};

use crate::bundles::{measure_at, theta0, BundleKind};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::funcspace::{sup_distance, FamilySpec, FunctionModel};
use crate::grid::check_increasing;

/// Relative offset of boundary probes above `θ₀(Zₙ)`.
pub const PROBE_DELTA: f64 = 1e-3;

/// Per-n probe: an extra θ to evaluate for member `n`.
pub type ProbeFn<'a> = dyn Fn(u64, &FunctionModel) -> Option<f64> + Sync + 'a;

/// Settings shared by the convergence experiments.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Harness {
    pub tolerances: Tolerances,
    pub probe_delta: f64,
    pub exec: Exec,
}

impl Default for Harness {
    fn default() -> Self {
        Harness { tolerances: Tolerances::default(), probe_delta: PROBE_DELTA, exec: Exec::default() }
    }
}

fn check_n_list(spec: &FamilySpec, n_list: &[u64]) -> Result<()> {
    if n_list.is_empty() {
        return Err(Error::domain("empty index list"));
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::domain("index list must strictly increase"));
    }
    if n_list[0] < spec.min_index() {
        return Err(Error::domain(format!(
            "index {} below family start {}",
            n_list[0],
            spec.min_index()
        )));
    }
    Ok(())
}

fn abs_diff(a: Option<f64>, b: Option<f64>) -> Option<f64> {
    Some((a? - b?).abs())
}

fn max_present<'a>(it: impl IntoIterator<Item = &'a Option<f64>>) -> Option<f64> {
    it.into_iter().flatten().copied().reduce(f64::max)
}

impl Harness {
    /// Pointwise errors `|Zₙ(x) − Z(x)|` on `x_grid` and sup distances.
    pub fn function_convergence(&self, spec: &FamilySpec, x_grid: &[f64], n_list: &[u64]) -> Result<ConvergenceReport> {
        check_n_list(spec, n_list)?;
        check_increasing(x_grid)?;
        let limit = &spec.limit;
        let rows = self.exec.map(n_list, |&n| -> Result<(Vec<Option<f64>>, Option<f64>)> {
            let member = spec.member(n)?;
            let sup = sup_distance(&member, limit, x_grid)?;
            let errs = x_grid
                .iter()
                .map(|&x| Ok(Some((member.eval(x)? - limit.eval(x)?).abs())))
                .collect::<Result<Vec<_>>>()?;
            let sup = max_present(&errs).map_or(sup, |m| m.max(sup));
            Ok((errs, Some(sup)))
        });
        let (per, sup): (Vec<_>, Vec<_>) = rows.into_iter().collect::<Result<Vec<_>>>()?.into_iter().unzip();
        Ok(ConvergenceReport {
            family: spec.id(),
            measure: "function".into(),
            n_list: n_list.to_vec(),
            grid: x_grid.to_vec(),
            verdict: verdict(&per, &sup, &self.tolerances),
            per_theta_errors: per,
            probe_thetas: Vec::new(),
            probe_errors: Vec::new(),
            sup_errors: sup,
            tolerances: self.tolerances,
            note: None,
        })
    }

    /// Bundle-curve errors on `theta_grid`. With `boundary_probes`, each
    /// member is additionally evaluated at `θ₀(Zₙ)·(1 + δ)`, where
    /// non-uniformity near the admissibility boundary shows up.
    pub fn measure_convergence(
        &self,
        spec: &FamilySpec,
        kind: &BundleKind,
        theta_grid: &[f64],
        n_list: &[u64],
        boundary_probes: bool,
    ) -> Result<ConvergenceReport> {
        let delta = self.probe_delta;
        let probe = move |_: u64, member: &FunctionModel| {
            let t0 = theta0(member, kind);
            (boundary_probes && t0 > 0.0).then_some(t0 * (1.0 + delta))
        };
        let mut report = self.measure_convergence_probed(spec, kind, theta_grid, n_list, &probe)?;
        if !boundary_probes {
            report.probe_thetas.clear();
            report.probe_errors.clear();
        }
        Ok(report)
    }

    /// [`Harness::measure_convergence`] with an arbitrary per-n probe.
    pub fn measure_convergence_probed(
        &self,
        spec: &FamilySpec,
        kind: &BundleKind,
        theta_grid: &[f64],
        n_list: &[u64],
        probe: &ProbeFn<'_>,
    ) -> Result<ConvergenceReport> {
        check_n_list(spec, n_list)?;
        check_increasing(theta_grid)?;
        let limit = &spec.limit;
        let mut report = ConvergenceReport {
            family: spec.id(),
            measure: kind.to_string(),
            n_list: n_list.to_vec(),
            grid: theta_grid.to_vec(),
            per_theta_errors: vec![vec![None; theta_grid.len()]; n_list.len()],
            probe_thetas: vec![None; n_list.len()],
            probe_errors: vec![None; n_list.len()],
            sup_errors: vec![None; n_list.len()],
            tolerances: self.tolerances,
            verdict: Verdict::NoConvergenceEvidence,
            note: None,
        };
        let limit_values = match theta_grid.iter().map(|&th| measure_at(limit, kind, th)).collect::<Result<Vec<_>>>() {
            Ok(v) => v,
            Err(e @ (Error::ContinuityRequired { .. } | Error::NotDecreasing { .. })) => {
                report.note = Some(format!("limit not evaluable: {e}"));
                return Ok(report);
            }
            Err(e) => return Err(e),
        };
        type Row = (Vec<Option<f64>>, Option<f64>, Option<f64>);
        let rows = self.exec.map(n_list, |&n| -> Result<Row> {
            let member = spec.member(n)?;
            let errs = theta_grid
                .iter()
                .zip(&limit_values)
                .map(|(&th, &lim)| Ok(abs_diff(measure_at(&member, kind, th)?, lim)))
                .collect::<Result<Vec<_>>>()?;
            let (probe_theta, probe_err) = match probe(n, &member) {
                Some(th) => (Some(th), abs_diff(measure_at(&member, kind, th)?, measure_at(limit, kind, th)?)),
                None => (None, None),
            };
            Ok((errs, probe_theta, probe_err))
        });
        for (k, row) in rows.into_iter().enumerate() {
            let (errs, pt, pe) = row?;
            report.sup_errors[k] = max_present(errs.iter().chain(std::iter::once(&pe)));
            report.per_theta_errors[k] = errs;
            report.probe_thetas[k] = pt;
            report.probe_errors[k] = pe;
        }
        report.verdict = verdict(&report.per_theta_errors, &report.sup_errors, &self.tolerances);
        Ok(report)
    }
}

/// [`Harness::function_convergence`] with default settings.
pub fn function_convergence(spec: &FamilySpec, x_grid: &[f64], n_list: &[u64]) -> Result<ConvergenceReport> {
    Harness::default().function_convergence(spec, x_grid, n_list)
}

/// [`Harness::measure_convergence`] with default settings.
pub fn measure_convergence(
    spec: &FamilySpec,
    kind: &BundleKind,
    theta_grid: &[f64],
    n_list: &[u64],
    boundary_probes: bool,
) -> Result<ConvergenceReport> {
    Harness::default().measure_convergence(spec, kind, theta_grid, n_list, boundary_probes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{uniform, GridSpec};

    const NS: [u64; 5] = [3, 10, 100, 1000, 10_000];

    #[test]
    fn figure1_functions_converge_uniformly() {
        let fam = FamilySpec::figure1(1.0, 1.0).unwrap();
        let r = function_convergence(&fam, &uniform(1.0, 101), &NS).unwrap();
        assert_eq!(r.verdict, Verdict::UniformEvidence);
        for (k, &n) in NS.iter().enumerate() {
            assert!((r.sup_errors[k].unwrap() - 1.0 / n as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn power_complement_converges_pointwise_only() {
        let fam = FamilySpec::power_complement();
        let r = function_convergence(&fam, &uniform(1.0, 101), &NS).unwrap();
        assert_eq!(r.verdict, Verdict::PointwiseOnlyEvidence);
        assert!(r.sup_errors.iter().all(|s| s.unwrap() >= 1.0 - 1e-3));
    }

    #[test]
    fn constants_to_zero_converge_uniformly() {
        let fam = FamilySpec::constants("1/n".parse().unwrap(), 1.0).unwrap();
        let r = function_convergence(&fam, &uniform(1.0, 11), &NS).unwrap();
        assert_eq!(r.verdict, Verdict::UniformEvidence);
    }

    #[test]
    fn figure1_mu_is_uniform_and_h_is_not() {
        let fam = FamilySpec::figure1(1.0, 1.0).unwrap();
        let mu = measure_convergence(&fam, &BundleKind::Mu, &uniform(1.0, 41), &NS, false).unwrap();
        assert_eq!(mu.verdict, Verdict::UniformEvidence);
        let grid = GridSpec::log(0.01, 10.0, 30).points().unwrap();
        let h = measure_convergence(&fam, &BundleKind::H, &grid, &NS, true).unwrap();
        assert_eq!(h.verdict, Verdict::PointwiseOnlyEvidence);
        assert!(h.sup_errors.iter().all(|s| s.unwrap() >= 0.2));
        assert!(h.last_fixed_max().unwrap() < 1e-3);
        // without probes the fixed grid alone looks uniform
        let h = measure_convergence(&fam, &BundleKind::H, &grid, &NS, false).unwrap();
        assert_eq!(h.verdict, Verdict::UniformEvidence);
        assert!(h.probe_thetas.is_empty());
    }

    #[test]
    fn constants_g_with_probes_is_pointwise_only() {
        let fam = FamilySpec::constants("1/n".parse().unwrap(), 1.0).unwrap();
        let grid = GridSpec::log(0.5, 10.0, 20).points().unwrap();
        let r = measure_convergence(&fam, &BundleKind::G, &grid, &NS, true).unwrap();
        assert_eq!(r.verdict, Verdict::PointwiseOnlyEvidence);
    }

    #[test]
    fn discontinuous_limit_is_reported_not_evaluable() {
        let fam = FamilySpec::power_complement();
        let r = measure_convergence(&fam, &BundleKind::H, &[0.5, 1.0], &NS, true).unwrap();
        assert!(r.note.is_some());
        assert_eq!(r.verdict, Verdict::NoConvergenceEvidence);
        assert!(r.sup_errors.iter().all(Option::is_none));
    }

    #[test]
    fn bad_index_lists() {
        let fam = FamilySpec::figure1(1.0, 1.0).unwrap();
        assert!(function_convergence(&fam, &[0.5], &[]).is_err());
        assert!(function_convergence(&fam, &[0.5], &[2, 3]).is_err());
        assert!(function_convergence(&fam, &[0.5], &[5, 4]).is_err());
        assert!(function_convergence(&fam, &[2.0], &[5]).is_err());
    }

    #[test]
    fn sequential_and_parallel_reports_are_identical() {
        let fam = FamilySpec::figure1(1.0, 1.0).unwrap();
        let grid = GridSpec::log(0.01, 10.0, 30).points().unwrap();
        let seq = Harness { exec: Exec::Sequential, ..Harness::default() };
        let par = Harness { exec: Exec::Parallel, ..Harness::default() };
        let a = seq.measure_convergence(&fam, &BundleKind::R, &grid, &NS, true).unwrap();
        let b = par.measure_convergence(&fam, &BundleKind::R, &grid, &NS, true).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}
