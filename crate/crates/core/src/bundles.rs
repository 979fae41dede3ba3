// SPDX-License-Identifier: Apache-2.0

//! Bundle curves `θ ↦ m_θ(F)` over parameter grids, the infimum of
//! admissible θ, and the step-composed and limit bundles used in the
//! classification.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::funcspace::FunctionModel;
use crate::grid::check_increasing;
use crate::measures;

/// `f(t) = low` for `t < threshold`, `high` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StepFSpec {
    threshold: f64,
    low: f64,
    high: f64,
}

impl StepFSpec {
    pub fn new(threshold: f64, low: f64, high: f64) -> Result<Self> {
        if ![threshold, low, high].iter().all(|v| v.is_finite()) {
            return Err(Error::domain("step function parameters must be finite"));
        }
        if low == high {
            return Err(Error::domain("step function needs low != high"));
        }
        Ok(StepFSpec { threshold, low, high })
    }

    /// Indicator of `[c, ∞)`.
    pub fn indicator(c: f64) -> Self {
        StepFSpec { threshold: c, low: 0.0, high: 1.0 }
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn apply(&self, t: f64) -> f64 {
        if t < self.threshold {
            self.low
        } else {
            self.high
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BundleKind {
    I,
    Mu,
    P,
    H,
    G,
    Kosmulski { p: f64 },
    R,
    /// `β ↦ f(F(β))`
    Mf { f: StepFSpec },
    /// `θ ↦ F(θ⁻) / θ`
    M,
}

impl BundleKind {
    /// Kinds whose defining equation needs a continuous nonincreasing function.
    pub fn needs_continuity(&self) -> bool {
        matches!(self, BundleKind::H | BundleKind::G | BundleKind::Kosmulski { .. } | BundleKind::R)
    }

    /// Kinds parameterized over `[0, T]` (or `(0, T]`), where θ beyond `T`
    /// is simply outside the bundle.
    fn bounded_by_domain(&self) -> bool {
        matches!(self, BundleKind::I | BundleKind::Mu | BundleKind::P | BundleKind::Mf { .. } | BundleKind::M)
    }

    fn allows_zero(&self) -> bool {
        matches!(self, BundleKind::I | BundleKind::Mu | BundleKind::P | BundleKind::Mf { .. })
    }
}

impl fmt::Display for BundleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BundleKind::I => f.write_str("I"),
            BundleKind::Mu => f.write_str("mu"),
            BundleKind::P => f.write_str("P"),
            BundleKind::H => f.write_str("h"),
            BundleKind::G => f.write_str("g"),
            BundleKind::Kosmulski { p } => write!(f, "h^(p={p})"),
            BundleKind::R => f.write_str("R"),
            BundleKind::Mf { .. } => f.write_str("Mf"),
            BundleKind::M => f.write_str("M"),
        }
    }
}

/// `Mf_β(F) = f(F(β))`.
pub fn mf_bundle(f: &FunctionModel, step: &StepFSpec, beta: f64) -> Result<f64> {
    let below = f.value_below(beta, step.threshold)?;
    Ok(if below { step.low } else { step.high })
}

/// `M_θ(F) = F(θ⁻) / θ`; the limit is taken from the left.
pub fn mlimit_bundle(f: &FunctionModel, theta: f64) -> Result<f64> {
    if theta == 0.0 {
        return Err(Error::domain("M is undefined at theta = 0"));
    }
    Ok(f.left_limit(theta)? / theta)
}

/// Infimum of admissible θ for `kind` on `f`.
pub fn theta0(f: &FunctionModel, kind: &BundleKind) -> f64 {
    match kind {
        BundleKind::H | BundleKind::R => measures::h_theta0(f),
        BundleKind::G => measures::g_theta0(f),
        BundleKind::Kosmulski { p } => f.end_value() / f.domain_end().powf(*p),
        _ => 0.0,
    }
}

/// The value of `kind` at `theta`, `None` where `theta` is not admissible.
pub fn measure_at(f: &FunctionModel, kind: &BundleKind, theta: f64) -> Result<Option<f64>> {
    if kind.bounded_by_domain() && theta > f.domain_end() {
        return Ok(None);
    }
    if theta < 0.0 || (theta == 0.0 && !kind.allows_zero()) || theta.is_nan() {
        return Err(Error::domain(format!("theta = {theta} not allowed for the {kind} bundle")));
    }
    let value = match kind {
        BundleKind::I => measures::i_theta(f, theta),
        BundleKind::Mu => measures::mu_theta(f, theta),
        BundleKind::P => measures::percentile(f, theta),
        BundleKind::H => measures::h_theta(f, theta),
        BundleKind::G => measures::g_theta(f, theta),
        BundleKind::Kosmulski { p } => measures::kosmulski(f, theta, *p),
        BundleKind::R => measures::r_theta(f, theta),
        BundleKind::Mf { f: step } => mf_bundle(f, step, theta),
        BundleKind::M => mlimit_bundle(f, theta),
    };
    match value {
        Ok(v) => Ok(Some(v)),
        Err(e) if e.is_not_admissible() => Ok(None),
        Err(e) => Err(e),
    }
}

/// A bundle evaluated on a θ-grid for one function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BundleCurve {
    pub measure: BundleKind,
    pub thetas: Vec<f64>,
    /// `None` where θ is not admissible.
    pub values: Vec<Option<f64>>,
    pub theta0: f64,
}

impl BundleCurve {
    /// `(θ, value, admissible)` triples.
    pub fn rows(&self) -> impl Iterator<Item = (f64, Option<f64>, bool)> + '_ {
        self.thetas.iter().zip(&self.values).map(|(&t, &v)| (t, v, v.is_some()))
    }
}

pub fn bundle_curve(f: &FunctionModel, kind: &BundleKind, grid: &[f64]) -> Result<BundleCurve> {
    bundle_curve_with(f, kind, grid, Exec::default())
}

/// [`bundle_curve`] with an explicit execution strategy.
pub fn bundle_curve_with(f: &FunctionModel, kind: &BundleKind, grid: &[f64], exec: Exec) -> Result<BundleCurve> {
    check_increasing(grid)?;
    let values = exec.map(grid, |&th| measure_at(f, kind, th)).into_iter().collect::<Result<Vec<_>>>()?;
    Ok(BundleCurve { measure: kind.clone(), thetas: grid.to_vec(), values, theta0: theta0(f, kind) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::funcspace::FamilySpec;

    #[test]
    fn h_curve_of_constant() {
        let f = FunctionModel::constant(1.0, 2.0).unwrap();
        let c = bundle_curve(&f, &BundleKind::H, &[0.5, 1.0, 2.0]).unwrap();
        assert_eq!(c.values, vec![Some(2.0), Some(1.0), Some(0.5)]);
        assert_eq!(c.theta0, 0.5);
        let c = bundle_curve(&f, &BundleKind::H, &[0.25, 0.5]).unwrap();
        assert_eq!(c.values, vec![None, Some(2.0)]);
    }

    #[test]
    fn g_curve_of_zero_function() {
        let f = FunctionModel::zero(3.0).unwrap();
        let c = bundle_curve(&f, &BundleKind::G, &[0.001, 0.1, 10.0]).unwrap();
        assert_eq!(c.values, vec![Some(0.0); 3]);
        assert_eq!(c.theta0, 0.0);
    }

    #[test]
    fn figure1_h_curve_is_absent_below_theta0() {
        let z = FamilySpec::figure1(1.0, 1.0).unwrap().member(10).unwrap();
        let c = bundle_curve(&z, &BundleKind::H, &[0.05, 0.1, 0.5]).unwrap();
        assert_eq!(c.values[0], None);
        assert!(c.values[1].is_some() && c.values[2].is_some());
        assert!((c.theta0 - 0.1).abs() < 1e-15);
    }

    #[test]
    fn theta0_examples() {
        let fam = FamilySpec::figure1(2.0, 3.0).unwrap();
        let z = fam.member(8).unwrap();
        assert!((theta0(&z, &BundleKind::H) - (2.0 / 8.0) / 3.0).abs() < 1e-15);
        assert_eq!(theta0(&fam.limit, &BundleKind::H), 0.0);
        let c = FunctionModel::constant(2.0, 4.0).unwrap();
        assert_eq!(theta0(&c, &BundleKind::G), 0.5);
    }

    #[test]
    fn mf_examples() {
        let ind = StepFSpec::indicator(1.0);
        let z5 = FunctionModel::power_complement(5).unwrap();
        assert_eq!(mf_bundle(&z5, &ind, 0.5).unwrap(), 0.0);
        let lim = FunctionModel::upper_step(1.0, 1.0, 1.0, 0.0).unwrap();
        assert_eq!(mf_bundle(&lim, &ind, 0.5).unwrap(), 1.0);
        let always = StepFSpec::new(0.0, 0.0, 1.0).unwrap();
        assert_eq!(mf_bundle(&z5, &always, 1.0).unwrap(), 1.0);
        assert!(StepFSpec::new(1.0, 2.0, 2.0).is_err());
    }

    #[test]
    fn m_examples() {
        let c = FunctionModel::constant(3.0, 2.0).unwrap();
        assert_eq!(mlimit_bundle(&c, 1.5).unwrap(), 2.0);
        let s = FunctionModel::upper_step(1.0, 0.5, 1.0, 0.0).unwrap();
        assert_eq!(mlimit_bundle(&s, 0.5).unwrap(), 2.0);
        let p = FunctionModel::power_complement(2).unwrap();
        assert_eq!(mlimit_bundle(&p, 0.5).unwrap(), 1.5);
        assert!(mlimit_bundle(&p, 0.0).is_err());
    }

    #[test]
    fn domain_bounded_kinds_drop_theta_beyond_t() {
        let f = FunctionModel::constant(1.0, 1.0).unwrap();
        let c = bundle_curve(&f, &BundleKind::Mu, &[0.0, 0.5, 1.0, 2.0]).unwrap();
        assert_eq!(c.values, vec![Some(1.0), Some(1.0), Some(1.0), None]);
        assert!(bundle_curve(&f, &BundleKind::H, &[0.0, 1.0]).is_err());
        assert!(bundle_curve(&f, &BundleKind::H, &[]).is_err());
        assert!(bundle_curve(&f, &BundleKind::H, &[1.0, 0.5]).is_err());
    }

    #[test]
    fn continuity_errors_are_not_masked() {
        let s = FunctionModel::upper_step(1.0, 0.5, 1.0, 0.0).unwrap();
        assert!(matches!(
            bundle_curve(&s, &BundleKind::H, &[1.0]),
            Err(Error::ContinuityRequired { .. })
        ));
        let c = bundle_curve(&s, &BundleKind::P, &[0.25, 0.5]).unwrap();
        assert_eq!(c.values, vec![Some(1.0), Some(0.0)]);
    }
}
