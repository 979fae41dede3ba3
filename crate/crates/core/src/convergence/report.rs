// SPDX-License-Identifier: Apache-2.0

use std::fmt;

use serde::{Deserialize, Serialize};

/// Heuristic reading of an error table. Finite runs cannot prove a limit;
/// these only say what the numbers look like.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    UniformEvidence,
    PointwiseOnlyEvidence,
    NoConvergenceEvidence,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::UniformEvidence => "UniformEvidence",
            Verdict::PointwiseOnlyEvidence => "PointwiseOnlyEvidence",
            Verdict::NoConvergenceEvidence => "NoConvergenceEvidence",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Errors below this count as converged.
    pub eps_u: f64,
    /// A sup error of at least `pointwise_factor * eps_u` counts as
    /// evidence against uniform convergence.
    pub pointwise_factor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { eps_u: 1e-3, pointwise_factor: 10.0 }
    }
}

/// Error series of a family (or of its bundle curves) against the limit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub family: String,
    /// `"function"` for raw function convergence, else the bundle kind.
    pub measure: String,
    pub n_list: Vec<u64>,
    /// x-grid for functions, θ-grid for bundles.
    pub grid: Vec<f64>,
    /// `per_theta_errors[k][i] = |m_θᵢ(Z_{n_k}) − m_θᵢ(Z)|`, `None` where θᵢ
    /// is not jointly admissible.
    pub per_theta_errors: Vec<Vec<Option<f64>>>,
    /// Extra per-n evaluation points (empty when probing is off).
    pub probe_thetas: Vec<Option<f64>>,
    pub probe_errors: Vec<Option<f64>>,
    /// Per-n supremum over every jointly admissible evaluated point.
    pub sup_errors: Vec<Option<f64>>,
    pub tolerances: Tolerances,
    pub verdict: Verdict,
    pub note: Option<String>,
}

impl ConvergenceReport {
    /// Largest fixed-grid error at the last index.
    pub fn last_fixed_max(&self) -> Option<f64> {
        self.per_theta_errors.last()?.iter().flatten().copied().reduce(f64::max)
    }

    pub fn last_sup(&self) -> Option<f64> {
        self.sup_errors.last().copied().flatten()
    }

    /// Long-format rows `(n, θ, error)`, probes included.
    pub fn long_rows(&self) -> Vec<(u64, f64, Option<f64>)> {
        let mut rows = Vec::new();
        for (k, &n) in self.n_list.iter().enumerate() {
            for (i, &th) in self.grid.iter().enumerate() {
                rows.push((n, th, self.per_theta_errors[k][i]));
            }
            if let Some(Some(th)) = self.probe_thetas.get(k) {
                rows.push((n, *th, self.probe_errors[k]));
            }
        }
        rows
    }
}

/// Classifies an error table.
///
/// * uniform: the sup error at the largest `n` is below `eps_u` and the sup
///   errors do not increase over the last three indices;
/// * pointwise only: every fixed-grid error at the largest `n` is below
///   `eps_u` while the sup error stays at or above `pointwise_factor·eps_u`;
/// * otherwise no convergence evidence.
pub fn verdict(per_theta_errors: &[Vec<Option<f64>>], sup_errors: &[Option<f64>], tol: &Tolerances) -> Verdict {
    let Some(&Some(last_sup)) = sup_errors.last() else {
        return Verdict::NoConvergenceEvidence;
    };
    let tail = &sup_errors[sup_errors.len().saturating_sub(3)..];
    let tail_nonincreasing = tail
        .windows(2)
        .all(|w| matches!((w[0], w[1]), (Some(a), Some(b)) if a >= b));
    if last_sup < tol.eps_u && tail_nonincreasing {
        return Verdict::UniformEvidence;
    }
    let fixed: Vec<f64> = per_theta_errors.last().map(|r| r.iter().flatten().copied().collect()).unwrap_or_default();
    if !fixed.is_empty() && fixed.iter().all(|&e| e < tol.eps_u) && last_sup >= tol.pointwise_factor * tol.eps_u {
        return Verdict::PointwiseOnlyEvidence;
    }
    Verdict::NoConvergenceEvidence
}
