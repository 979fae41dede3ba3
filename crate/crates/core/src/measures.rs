// SPDX-License-Identifier: Apache-2.0

//! Impact measures at a fixed parameter.
//!
//! Crossing-type measures (h, g, PED, R, polar) are solved exactly on
//! piecewise-linear and constant functions and by bracketed bisection
//! otherwise. The `*_bisection` variants force the generic route and exist
//! so the two can be checked against each other.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::funcspace::{FunctionModel, PiecewiseLinear};
use crate::roots::{bisect_decreasing, linear_crossing};

/// Strictly increasing continuous comparison curve of a PED measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum FSpec {
    /// `f(x) = θx`
    Linear { theta: f64 },
    /// `f(x) = θxᵖ`
    Power { theta: f64, p: f64 },
    /// Linear interpolation through strictly increasing points; the first
    /// abscissa must be 0 and the last must reach the function's `T`.
    PiecewiseLinearIncreasing { points: Vec<[f64; 2]> },
}

impl FSpec {
    pub fn linear(theta: f64) -> Result<Self> {
        check_positive("theta", theta)?;
        Ok(FSpec::Linear { theta })
    }

    pub fn power(theta: f64, p: f64) -> Result<Self> {
        check_positive("theta", theta)?;
        check_positive("p", p)?;
        Ok(FSpec::Power { theta, p })
    }

    pub fn piecewise_linear(points: Vec<[f64; 2]>) -> Result<Self> {
        let f = FSpec::PiecewiseLinearIncreasing { points };
        f.validate()?;
        Ok(f)
    }

    /// Checks the invariants; needed for values that came through serde.
    pub fn validate(&self) -> Result<()> {
        match self {
            FSpec::Linear { theta } => check_positive("theta", *theta),
            FSpec::Power { theta, p } => {
                check_positive("theta", *theta)?;
                check_positive("p", *p)
            }
            FSpec::PiecewiseLinearIncreasing { points } => {
                if points.len() < 2 {
                    return Err(Error::domain("increasing curve needs at least two points"));
                }
                if points.iter().flatten().any(|v| !v.is_finite()) {
                    return Err(Error::domain("increasing curve has non-finite points"));
                }
                if points[0][0] != 0.0 {
                    return Err(Error::domain("increasing curve must start at x = 0"));
                }
                if points.windows(2).any(|w| !(w[0][0] < w[1][0] && w[0][1] < w[1][1])) {
                    return Err(Error::domain("increasing curve must be strictly increasing"));
                }
                Ok(())
            }
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self {
            FSpec::Linear { theta } => theta * x,
            FSpec::Power { theta, p } => theta * x.powf(*p),
            FSpec::PiecewiseLinearIncreasing { points } => {
                let i = points.partition_point(|p| p[0] <= x).clamp(1, points.len() - 1) - 1;
                let (a, b) = (points[i], points[i + 1]);
                if x == a[0] {
                    return a[1];
                }
                if x == b[0] {
                    return b[1];
                }
                a[1] + (b[1] - a[1]) * (x - a[0]) / (b[0] - a[0])
            }
        }
    }

    fn breakpoints(&self) -> Option<Vec<f64>> {
        match self {
            FSpec::Linear { .. } => Some(Vec::new()),
            FSpec::Power { p, .. } if *p == 1.0 => Some(Vec::new()),
            FSpec::Power { .. } => None,
            FSpec::PiecewiseLinearIncreasing { points } => Some(points.iter().map(|p| p[0]).collect()),
        }
    }
}

/// A measure together with its parameter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MeasureSpec {
    I { theta: f64 },
    Mu { theta: f64 },
    Percentile { theta: f64 },
    H { theta: f64 },
    G { theta: f64 },
    Kosmulski { theta: f64, p: f64 },
    Ped { f: FSpec },
    R { theta: f64 },
    Polar { phi: f64 },
}

impl MeasureSpec {
    pub fn evaluate(&self, f: &FunctionModel) -> Result<f64> {
        match self {
            MeasureSpec::I { theta } => i_theta(f, *theta),
            MeasureSpec::Mu { theta } => mu_theta(f, *theta),
            MeasureSpec::Percentile { theta } => percentile(f, *theta),
            MeasureSpec::H { theta } => h_theta(f, *theta),
            MeasureSpec::G { theta } => g_theta(f, *theta),
            MeasureSpec::Kosmulski { theta, p } => kosmulski(f, *theta, *p),
            MeasureSpec::Ped { f: fs } => ped_measure(f, fs),
            MeasureSpec::R { theta } => r_theta(f, *theta),
            MeasureSpec::Polar { phi } => polar(f, *phi),
        }
    }
}

impl fmt::Display for MeasureSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureSpec::I { theta } => write!(f, "I(theta={theta})"),
            MeasureSpec::Mu { theta } => write!(f, "mu(theta={theta})"),
            MeasureSpec::Percentile { theta } => write!(f, "P(theta={theta})"),
            MeasureSpec::H { theta } => write!(f, "h(theta={theta})"),
            MeasureSpec::G { theta } => write!(f, "g(theta={theta})"),
            MeasureSpec::Kosmulski { theta, p } => write!(f, "h^(p)(theta={theta}, p={p})"),
            MeasureSpec::Ped { .. } => write!(f, "ped"),
            MeasureSpec::R { theta } => write!(f, "R(theta={theta})"),
            MeasureSpec::Polar { phi } => write!(f, "polar(phi={phi})"),
        }
    }
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if !(v.is_finite() && v > 0.0) {
        return Err(Error::domain(format!("{name} must be positive and finite, got {v}")));
    }
    Ok(())
}

fn check_in_domain(f: &FunctionModel, theta: f64) -> Result<()> {
    let t = f.domain_end();
    if !(0.0..=t).contains(&theta) {
        return Err(Error::domain(format!("theta = {theta} outside [0, {t}]")));
    }
    Ok(())
}

/// Crossing measures are only defined on continuous nonincreasing functions.
fn require_regular(f: &FunctionModel, measure: &'static str) -> Result<()> {
    if let Some(at) = f.jumps().first() {
        return Err(Error::ContinuityRequired { measure, at: *at });
    }
    if let Some(at) = f.first_increase() {
        return Err(Error::NotDecreasing { measure, at });
    }
    Ok(())
}

#[derive(Clone, Copy, PartialEq)]
enum Route {
    Auto,
    Bisection,
}

/// `I_θ(F) = ∫₀^θ F`.
pub fn i_theta(f: &FunctionModel, theta: f64) -> Result<f64> {
    check_in_domain(f, theta)?;
    f.cumulative(theta)
}

/// `μ_θ(F) = I_θ(F) / θ`, with `μ₀(F) = F(0)`.
pub fn mu_theta(f: &FunctionModel, theta: f64) -> Result<f64> {
    check_in_domain(f, theta)?;
    if theta == 0.0 {
        return f.eval(0.0);
    }
    Ok(f.cumulative(theta)? / theta)
}

/// `P_θ(F) = F(θ)`.
pub fn percentile(f: &FunctionModel, theta: f64) -> Result<f64> {
    check_in_domain(f, theta)?;
    f.eval(theta)
}

/// Infimum of admissible θ for `h_θ`: `F(T) / T`.
pub fn h_theta0(f: &FunctionModel) -> f64 {
    f.end_value() / f.domain_end()
}

/// Infimum of admissible θ for `g_θ`: `∫₀ᵀ F / T²`.
pub fn g_theta0(f: &FunctionModel) -> f64 {
    let t = f.domain_end();
    f.total() / (t * t)
}

/// Generalized h-index: the `x` with `F(x) = θx`.
pub fn h_theta(f: &FunctionModel, theta: f64) -> Result<f64> {
    h_route(f, theta, Route::Auto)
}

/// [`h_theta`] through generic bisection only.
pub fn h_theta_bisection(f: &FunctionModel, theta: f64) -> Result<f64> {
    h_route(f, theta, Route::Bisection)
}

fn h_route(f: &FunctionModel, theta: f64, route: Route) -> Result<f64> {
    check_positive("theta", theta)?;
    require_regular(f, "h")?;
    if f.is_zero() {
        return Ok(0.0);
    }
    let t = f.domain_end();
    let end = f.end_value();
    if end > theta * t {
        return Err(Error::NotAdmissible {
            measure: "h",
            reason: format!("F(T) = {end} exceeds theta*T = {}", theta * t),
            theta0: Some(h_theta0(f)),
        });
    }
    if route == Route::Auto {
        match f {
            FunctionModel::Constant(c) => return Ok((c.value() / theta).min(t)),
            FunctionModel::PiecewiseLinear(p) => {
                let xs: Vec<f64> = p.knots().iter().map(|k| k.x).collect();
                let d: Vec<f64> = p.knots().iter().map(|k| k.right - theta * k.x).collect();
                return Ok(linear_crossing(&xs, &d));
            }
            _ => {}
        }
    }
    Ok(bisect_decreasing(|x| f.eval_unchecked(x) - theta * x, 0.0, t, 0.0))
}

/// Generalized g-index: the largest `x` with `∫₀ˣ F = θx²`.
pub fn g_theta(f: &FunctionModel, theta: f64) -> Result<f64> {
    g_route(f, theta, Route::Auto)
}

/// [`g_theta`] through generic bisection only.
pub fn g_theta_bisection(f: &FunctionModel, theta: f64) -> Result<f64> {
    g_route(f, theta, Route::Bisection)
}

fn g_route(f: &FunctionModel, theta: f64, route: Route) -> Result<f64> {
    check_positive("theta", theta)?;
    require_regular(f, "g")?;
    if f.is_zero() {
        return Ok(0.0);
    }
    let t = f.domain_end();
    let total = f.total();
    if total > theta * t * t {
        return Err(Error::NotAdmissible {
            measure: "g",
            reason: format!("integral over [0,T] = {total} exceeds theta*T^2 = {}", theta * t * t),
            theta0: Some(g_theta0(f)),
        });
    }
    if route == Route::Auto {
        match f {
            FunctionModel::Constant(c) => return Ok((c.value() / theta).min(t)),
            FunctionModel::PiecewiseLinear(p) => return Ok(g_piecewise(p, theta)),
            _ => {}
        }
    }
    let gap = |x: f64| f.cumulative_unchecked(x) - theta * x * x;
    if gap(t) == 0.0 {
        return Ok(t);
    }
    // G is concave with G(0) = 0 and G > 0 on (0, g): find a positive point
    let mut lo = t;
    while gap(lo) <= 0.0 {
        lo *= 0.5;
        if lo == 0.0 {
            return Ok(0.0);
        }
    }
    Ok(bisect_decreasing(gap, lo, t, 0.0))
}

/// On each segment the cumulative integral is quadratic, so the crossing
/// with `θx²` is a quadratic root.
fn g_piecewise(p: &PiecewiseLinear, theta: f64) -> f64 {
    let knots = p.knots();
    let prefix = p.prefix();
    let gap = |i: usize| prefix[i] - theta * knots[i].x * knots[i].x;
    let j = (1..knots.len()).find(|&j| gap(j) <= 0.0).unwrap_or(knots.len() - 1);
    if gap(j) == 0.0 {
        return knots[j].x;
    }
    let i = j - 1;
    let x0 = knots[i].x;
    let width = knots[j].x - x0;
    let a = 0.5 * p.slope(i) - theta;
    let b = knots[i].right - 2.0 * theta * x0;
    let c = gap(i).max(0.0);
    let disc = (b * b - 4.0 * a * c).max(0.0);
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let u = if q == 0.0 { 0.0 } else { (q / a).max(c / q) };
    x0 + u.clamp(0.0, width)
}

/// PED measure: the `x` with `F(x) = f(x)`.
pub fn ped_measure(f: &FunctionModel, fs: &FSpec) -> Result<f64> {
    ped_route(f, fs, Route::Auto)
}

/// [`ped_measure`] through generic bisection only.
pub fn ped_measure_bisection(f: &FunctionModel, fs: &FSpec) -> Result<f64> {
    ped_route(f, fs, Route::Bisection)
}

fn ped_route(f: &FunctionModel, fs: &FSpec, route: Route) -> Result<f64> {
    fs.validate()?;
    require_regular(f, "ped")?;
    let t = f.domain_end();
    if let FSpec::PiecewiseLinearIncreasing { points } = fs {
        let end = points[points.len() - 1][0];
        if end < t {
            return Err(Error::domain(format!("increasing curve ends at {end}, before T = {t}")));
        }
    }
    let (f0, ft) = (f.eval_unchecked(0.0), f.end_value());
    let theta0 = match fs {
        FSpec::Linear { .. } => Some(ft / t),
        FSpec::Power { p, .. } => Some(ft / t.powf(*p)),
        FSpec::PiecewiseLinearIncreasing { .. } => None,
    };
    if f0 < fs.eval(0.0) {
        return Err(Error::NotAdmissible {
            measure: "ped",
            reason: format!("F(0) = {f0} is below f(0) = {}", fs.eval(0.0)),
            theta0,
        });
    }
    if ft > fs.eval(t) {
        return Err(Error::NotAdmissible {
            measure: "ped",
            reason: format!("F(T) = {ft} exceeds f(T) = {}", fs.eval(t)),
            theta0,
        });
    }
    if route == Route::Auto {
        if let (FunctionModel::Constant(c), FSpec::Power { theta, p }) = (f, fs) {
            return Ok((c.value() / theta).powf(1.0 / p).min(t));
        }
        let f_knots = match f {
            FunctionModel::PiecewiseLinear(p) => Some(p.knots().iter().map(|k| k.x).collect::<Vec<_>>()),
            FunctionModel::Constant(_) => Some(vec![0.0, t]),
            _ => None,
        };
        if let (Some(mut xs), Some(g_knots)) = (f_knots, fs.breakpoints()) {
            xs.extend(g_knots.into_iter().filter(|&x| x < t));
            xs.sort_by(f64::total_cmp);
            xs.dedup();
            let d: Vec<f64> = xs.iter().map(|&x| f.eval_unchecked(x) - fs.eval(x)).collect();
            return Ok(linear_crossing(&xs, &d));
        }
    }
    Ok(bisect_decreasing(|x| f.eval_unchecked(x) - fs.eval(x), 0.0, t, 0.0))
}

/// Generalized Kosmulski index: PED measure with `f(x) = θxᵖ`.
pub fn kosmulski(f: &FunctionModel, theta: f64, p: f64) -> Result<f64> {
    ped_measure(f, &FSpec::power(theta, p)?)
}

/// `R_θ(F) = sqrt(∫₀^{h_θ(F)} F)`.
pub fn r_theta(f: &FunctionModel, theta: f64) -> Result<f64> {
    let h = h_theta(f, theta)?;
    Ok(f.cumulative(h)?.sqrt())
}

/// Polar function: `h_θ(F) · sqrt(1 + θ²)` with `θ = tan φ`.
pub fn polar(f: &FunctionModel, phi: f64) -> Result<f64> {
    if !(phi > 0.0 && phi < std::f64::consts::FRAC_PI_2) {
        return Err(Error::domain(format!("phi = {phi} must lie strictly inside (0, pi/2)")));
    }
    let theta = phi.tan();
    Ok(h_theta(f, theta)? * theta.hypot(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, SQRT_2};

    fn line() -> FunctionModel {
        FunctionModel::from_points(&[(0.0, 1.0), (1.0, 0.0)]).unwrap()
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn integral_measures() {
        let c = FunctionModel::constant(2.0, 10.0).unwrap();
        assert_eq!(i_theta(&c, 5.0).unwrap(), 10.0);
        assert_eq!(i_theta(&line(), 1.0).unwrap(), 0.5);
        close(i_theta(&FunctionModel::power_complement(2).unwrap(), 1.0).unwrap(), 2.0 / 3.0, 1e-15);
        let c3 = FunctionModel::constant(3.0, 4.0).unwrap();
        for th in [0.0, 0.1, 1.0, 4.0] {
            close(mu_theta(&c3, th).unwrap(), 3.0, 1e-15);
        }
        assert_eq!(mu_theta(&line(), 0.0).unwrap(), 1.0);
        assert_eq!(mu_theta(&line(), 1.0).unwrap(), 0.5);
        assert!(i_theta(&c, 11.0).is_err());
        assert!(mu_theta(&c, -1.0).is_err());
    }

    #[test]
    fn percentile_examples() {
        assert_eq!(percentile(&FunctionModel::constant(2.0, 10.0).unwrap(), 7.0).unwrap(), 2.0);
        assert_eq!(percentile(&FunctionModel::power_complement(2).unwrap(), 0.5).unwrap(), 0.75);
        assert!(percentile(&line(), 1.5).is_err());
    }

    #[test]
    fn h_examples() {
        let c = FunctionModel::constant(3.0, 10.0).unwrap();
        assert_eq!(h_theta(&c, 2.0).unwrap(), 1.5);
        assert_eq!(h_theta(&line(), 1.0).unwrap(), 0.5);
        let z10 = crate::funcspace::FamilySpec::figure1(1.0, 1.0).unwrap().member(10).unwrap();
        close(h_theta(&z10, 0.12).unwrap(), 1.0 / 1.2, 1e-12);
    }

    #[test]
    fn h_errors() {
        let c = FunctionModel::constant(3.0, 1.0).unwrap();
        match h_theta(&c, 2.0) {
            Err(Error::NotAdmissible { theta0, .. }) => assert_eq!(theta0, Some(3.0)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(h_theta(&line(), 0.0), Err(Error::Domain(_))));
        let step = FunctionModel::upper_step(1.0, 0.5, 1.0, 0.0).unwrap();
        assert!(matches!(h_theta(&step, 1.0), Err(Error::ContinuityRequired { .. })));
        let bump = FunctionModel::from_points(&[(0.0, 1.0), (0.5, 0.2), (1.0, 0.4)]).unwrap();
        assert!(matches!(h_theta(&bump, 1.0), Err(Error::NotDecreasing { .. })));
    }

    #[test]
    fn zero_function_measures() {
        let z = FunctionModel::zero(2.0).unwrap();
        for th in [0.01, 1.0, 50.0] {
            assert_eq!(h_theta(&z, th).unwrap(), 0.0);
            assert_eq!(g_theta(&z, th).unwrap(), 0.0);
            assert_eq!(r_theta(&z, th).unwrap(), 0.0);
            assert_eq!(kosmulski(&z, th, 2.5).unwrap(), 0.0);
        }
    }

    #[test]
    fn g_examples() {
        let c = FunctionModel::constant(3.0, 10.0).unwrap();
        assert_eq!(g_theta(&c, 2.0).unwrap(), 1.5);
        close(g_theta(&line(), 1.0).unwrap(), 2.0 / 3.0, 1e-15);
        close(g_theta_bisection(&line(), 1.0).unwrap(), 2.0 / 3.0, 1e-12);
        // Y(1) = 1/2 > theta = 0.25
        assert!(g_theta(&line(), 0.25).unwrap_err().is_not_admissible());
    }

    #[test]
    fn g_on_power_complement_solves_its_equation() {
        let f = FunctionModel::power_complement(3).unwrap();
        let g = g_theta(&f, 1.0).unwrap();
        close(f.cumulative(g).unwrap(), g * g, 1e-12);
        assert!(g > 0.0 && g <= 1.0);
    }

    #[test]
    fn ped_examples() {
        let c = FunctionModel::constant(1.0, 1.0).unwrap();
        close(ped_measure(&c, &FSpec::power(1.0, 2.0).unwrap()).unwrap(), 1.0, 1e-15);
        let golden = (5f64.sqrt() - 1.0) / 2.0;
        close(ped_measure(&line(), &FSpec::power(1.0, 2.0).unwrap()).unwrap(), golden, 1e-12);
        let lin = FSpec::linear(1.3).unwrap();
        assert_eq!(ped_measure(&line(), &lin).unwrap(), h_theta(&line(), 1.3).unwrap());
    }

    #[test]
    fn ped_with_piecewise_curve_is_exact() {
        // f through (0, 0.2), (1, 0.8): 1 - x = 0.2 + 0.6x at x = 0.5
        let fs = FSpec::piecewise_linear(vec![[0.0, 0.2], [1.0, 0.8]]).unwrap();
        assert_eq!(ped_measure(&line(), &fs).unwrap(), 0.5);
        let short = FSpec::piecewise_linear(vec![[0.0, 0.2], [0.5, 0.8]]).unwrap();
        assert!(matches!(ped_measure(&line(), &short), Err(Error::Domain(_))));
        let high = FSpec::piecewise_linear(vec![[0.0, 2.0], [1.0, 3.0]]).unwrap();
        assert!(ped_measure(&line(), &high).unwrap_err().is_not_admissible());
        assert!(FSpec::piecewise_linear(vec![[0.0, 1.0], [1.0, 1.0]]).is_err());
    }

    #[test]
    fn kosmulski_examples() {
        let c = FunctionModel::constant(4.0, 3.0).unwrap();
        close(kosmulski(&c, 1.0, 2.0).unwrap(), 2.0, 1e-15);
        assert_eq!(kosmulski(&line(), 0.7, 1.0).unwrap(), h_theta(&line(), 0.7).unwrap());
        assert!(kosmulski(&line(), 1.0, 0.0).is_err());
    }

    #[test]
    fn r_examples() {
        let c = FunctionModel::constant(1.0, 2.0).unwrap();
        close(r_theta(&c, 1.0).unwrap(), 1.0, 1e-15);
        close(r_theta(&line(), 1.0).unwrap(), (3.0f64 / 8.0).sqrt(), 1e-15);
        assert!(r_theta(&FunctionModel::constant(5.0, 1.0).unwrap(), 1.0).unwrap_err().is_not_admissible());
    }

    #[test]
    fn polar_examples() {
        let c = FunctionModel::constant(1.0, 2.0).unwrap();
        close(polar(&c, FRAC_PI_4).unwrap(), SQRT_2, 1e-12);
        close(polar(&line(), FRAC_PI_4).unwrap(), SQRT_2 / 2.0, 1e-12);
        // h_{tan phi} = 1/tan phi must not exceed T = 2
        for phi in [0.5, 0.7, 1.2] {
            close(polar(&c, phi).unwrap(), 1.0 / phi.sin(), 1e-12);
        }
        assert!(polar(&c, 0.0).is_err());
        assert!(polar(&c, std::f64::consts::FRAC_PI_2).is_err());
    }

    #[test]
    fn measure_spec_dispatch() {
        let f = line();
        assert_eq!(MeasureSpec::H { theta: 1.0 }.evaluate(&f).unwrap(), 0.5);
        let spec: MeasureSpec = serde_json::from_str(r#"{"kind":"kosmulski","theta":1.0,"p":2.0}"#).unwrap();
        close(spec.evaluate(&f).unwrap(), (5f64.sqrt() - 1.0) / 2.0, 1e-12);
        let spec: MeasureSpec =
            serde_json::from_str(r#"{"kind":"ped","f":{"type":"linear","theta":1.0}}"#).unwrap();
        assert_eq!(spec.evaluate(&f).unwrap(), 0.5);
    }
}
