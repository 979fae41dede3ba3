// SPDX-License-Identifier: Apache-2.0

pub mod bundle;
pub mod classify;
pub mod converge;
pub mod ingest;
pub mod measure;

use clap::ValueEnum as _;
use impact_bundles::convergence::Tolerances;
use impact_bundles::{BundleKind, Exec, FunctionModel, GridSpec, Spacing, StepFSpec};

use crate::args::{Format, GridOpts, KindArg, KindOpts, TolOpts};
use crate::config::{enum_value, json_arg, Config};
use crate::error::{CliError, CliResult};

/// Settings shared by every subcommand.
pub struct Ctx {
    pub cfg: Config,
    pub exec: Exec,
}

impl Ctx {
    pub fn function(&self, flag: Option<&str>) -> CliResult<FunctionModel> {
        let text = json_arg(flag, self.cfg.function.as_ref())?
            .ok_or_else(|| CliError::input("a function spec is required (--fn PATH or inline JSON)"))?;
        Ok(FunctionModel::from_json(&text)?)
    }

    pub fn kind(&self, opts: &KindOpts) -> CliResult<KindArg> {
        opts.kind
            .or(enum_value("kind", self.cfg.kind.as_ref())?)
            .ok_or_else(|| CliError::input("--kind is required"))
    }

    pub fn step(&self, opts: &KindOpts) -> CliResult<StepFSpec> {
        Ok(StepFSpec::new(
            opts.mf_threshold.or(self.cfg.mf_threshold).unwrap_or(1.0),
            opts.mf_low.or(self.cfg.mf_low).unwrap_or(0.0),
            opts.mf_high.or(self.cfg.mf_high).unwrap_or(1.0),
        )?)
    }

    pub fn p(&self, opts: &KindOpts) -> CliResult<f64> {
        opts.p.or(self.cfg.p).ok_or_else(|| CliError::input("--p is required for kind kosmulski"))
    }

    /// The bundle for a kind; polar, ped and raw functions have none.
    pub fn bundle_kind(&self, kind: KindArg, opts: &KindOpts) -> CliResult<BundleKind> {
        Ok(match kind {
            KindArg::I => BundleKind::I,
            KindArg::Mu => BundleKind::Mu,
            KindArg::P => BundleKind::P,
            KindArg::H => BundleKind::H,
            KindArg::G => BundleKind::G,
            KindArg::Kosmulski => BundleKind::Kosmulski { p: self.p(opts)? },
            KindArg::R => BundleKind::R,
            KindArg::Mf => BundleKind::Mf { f: self.step(opts)? },
            KindArg::M => BundleKind::M,
            KindArg::Polar | KindArg::Ped | KindArg::Function => {
                return Err(CliError::input(format!("kind {} has no theta-bundle", kind_name(kind))))
            }
        })
    }

    /// `defaults` overridden by the config file, then by flags.
    pub fn grid(&self, opts: &GridOpts, defaults: GridSpec) -> CliResult<GridSpec> {
        let spacing: Option<Spacing> = crate::config::parsed("spacing", self.cfg.spacing.as_ref())?;
        Ok(GridSpec {
            min: opts.min.or(self.cfg.min).unwrap_or(defaults.min),
            max: opts.max.or(self.cfg.max).unwrap_or(defaults.max),
            count: opts.count.or(self.cfg.count).unwrap_or(defaults.count),
            spacing: opts.spacing.or(spacing).unwrap_or(defaults.spacing),
        })
    }

    pub fn format(&self, flag: Option<Format>) -> CliResult<Option<Format>> {
        Ok(flag.or(enum_value("format", self.cfg.format.as_ref())?))
    }

    pub fn tolerances(&self, opts: &TolOpts) -> CliResult<Tolerances> {
        let d = Tolerances::default();
        let t = Tolerances {
            eps_u: opts.eps_u.or(self.cfg.eps_u).unwrap_or(d.eps_u),
            pointwise_factor: opts.pointwise_factor.or(self.cfg.pointwise_factor).unwrap_or(d.pointwise_factor),
        };
        if !(t.eps_u > 0.0 && t.eps_u.is_finite() && t.pointwise_factor >= 1.0 && t.pointwise_factor.is_finite()) {
            return Err(CliError::input("--eps-u must be positive and --pointwise-factor at least 1"));
        }
        Ok(t)
    }
}

/// Kinds whose admissible θ are bounded below by a positive θ₀.
pub fn crossing_kind(kind: KindArg) -> bool {
    matches!(kind, KindArg::H | KindArg::G | KindArg::R | KindArg::Kosmulski)
}

pub fn kind_name(kind: KindArg) -> String {
    kind.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

/// Grids for crossing kinds must stay away from 0.
pub fn check_grid(kind: KindArg, grid: &GridSpec) -> CliResult<Vec<f64>> {
    if (crossing_kind(kind) || kind == KindArg::M) && grid.min <= 0.0 {
        return Err(CliError::input(format!("grid min must be positive for kind {}", kind_name(kind))));
    }
    Ok(grid.points()?)
}
