// SPDX-License-Identifier: Apache-2.0

//! Generalized impact measures on continuous decreasing rank-frequency
//! functions, their θ-bundles, and a numerical harness for pointwise and
//! uniform convergence of families of such functions.

pub mod bundles;
pub mod convergence;
pub mod error;
pub mod exec;
pub mod funcspace;
pub mod grid;
pub mod measures;
mod roots;

pub use bundles::{bundle_curve, bundle_curve_with, measure_at, mf_bundle, mlimit_bundle, theta0, BundleCurve, BundleKind, StepFSpec};
pub use convergence::{
    classify, function_convergence, measure_convergence, run_scenarios, run_scenarios_with, Classification,
    ConvergenceReport, Harness, ScenarioResult, Tolerances, Verdict,
};
pub use error::{Error, Result};
pub use exec::Exec;
pub use funcspace::{from_citations, sup_distance, FamilySpec, FunctionModel, Tail};
pub use grid::{GridSpec, Spacing};
pub use measures::{FSpec, MeasureSpec};
