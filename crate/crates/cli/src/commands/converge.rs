// SPDX-License-Identifier: Apache-2.0

use impact_bundles::convergence::{ConvergenceReport, Harness, DEFAULT_N_LIST};
use impact_bundles::funcspace::ConstantRule;
use impact_bundles::grid::uniform;
use impact_bundles::{FamilySpec, FunctionModel, GridSpec};
use serde::Deserialize;

use super::{check_grid, Ctx};
use crate::args::{ConvergeArgs, FamilyArg, Format, KindArg};
use crate::config::{enum_value, parsed};
use crate::error::{CliError, CliResult};
use crate::output::{exact, opt_exact, write_atomic};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct UserFile {
    members: Vec<(u64, FunctionModel)>,
    limit: FunctionModel,
}

pub fn run(args: &ConvergeArgs, ctx: &Ctx) -> CliResult<()> {
    let family = family(args, ctx)?;
    let kind = args.kind.kind.or(enum_value("kind", ctx.cfg.kind.as_ref())?).unwrap_or(KindArg::Function);
    let n_list = match args.n_list.clone().or_else(|| ctx.cfg.n_list.clone()) {
        Some(v) => v,
        None => family
            .declared_indices()
            .unwrap_or_else(|| DEFAULT_N_LIST.iter().copied().filter(|&n| n >= family.min_index()).collect()),
    };
    let harness = Harness { tolerances: ctx.tolerances(&args.tol)?, exec: ctx.exec, ..Harness::default() };

    let report = if kind == KindArg::Function {
        let t = family.domain_end();
        let x_grid = if args.grid.min.is_some() || args.grid.max.is_some() || args.grid.count.is_some() {
            ctx.grid(&args.grid, GridSpec::linear(0.0, t, 101))?.points()?
        } else {
            uniform(t, 101)
        };
        harness.function_convergence(&family, &x_grid, &n_list)?
    } else {
        let bundle = ctx.bundle_kind(kind, &args.kind)?;
        let grid = ctx.grid(&args.grid, default_grid(kind, &family))?;
        let thetas = check_grid(kind, &grid)?;
        let probes = args
            .boundary_probes
            .or(ctx.cfg.boundary_probes)
            .unwrap_or(matches!(kind, KindArg::H | KindArg::G | KindArg::R));
        harness.measure_convergence(&family, &bundle, &thetas, &n_list, probes)?
    };

    let out = args.out.out.as_deref().or(ctx.cfg.out.as_deref());
    let format = ctx.format(args.out.format)?;
    let bytes = match format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut v = serde_json::to_vec_pretty(&report)?;
            v.push(b'\n');
            v
        }
        Format::Csv => to_long_csv(&report)?,
    };
    let summary = summary(&report);
    match (out, format) {
        (Some(p), _) => {
            write_atomic(p, &bytes)?;
            println!("{summary}");
            println!("wrote {}", p.display());
        }
        (None, Some(_)) => {
            use std::io::Write;
            std::io::stdout().write_all(&bytes)?;
            eprintln!("{summary}");
        }
        (None, None) => println!("{summary}"),
    }
    Ok(())
}

fn summary(r: &ConvergenceReport) -> String {
    let mut s = format!("verdict: {} ({} on {})", r.verdict, r.measure, r.family);
    if let (Some(n), Some(sup)) = (r.n_list.last(), r.last_sup()) {
        s.push_str(&format!("; sup error at n={n}: {}", exact(sup)));
    }
    if let Some(note) = &r.note {
        s.push_str(&format!("; note: {note}"));
    }
    s
}

/// Long format: one row per (n, θ), probes included.
pub fn to_long_csv(r: &ConvergenceReport) -> CliResult<Vec<u8>> {
    let scenario = format!("{}:{}", r.family, r.measure);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["scenario", "n", "theta", "error"])?;
    for (n, th, e) in r.long_rows() {
        w.write_record([scenario.clone(), n.to_string(), exact(th), opt_exact(e)])?;
    }
    w.into_inner().map_err(|e| CliError::input(e.to_string()))
}

fn family(args: &ConvergeArgs, ctx: &Ctx) -> CliResult<FamilySpec> {
    let which = args
        .family
        .or(enum_value("family", ctx.cfg.family.as_ref())?)
        .ok_or_else(|| CliError::input("--family is required (power_complement, constants, figure1, user)"))?;
    let s = args.s.or(ctx.cfg.s).unwrap_or(1.0);
    let t = args.t.or(ctx.cfg.t).unwrap_or(1.0);
    Ok(match which {
        FamilyArg::PowerComplement => FamilySpec::power_complement(),
        FamilyArg::Figure1 => FamilySpec::figure1(s, t)?,
        FamilyArg::Constants => {
            let rule = match &args.an {
                Some(a) => a.parse::<ConstantRule>()?,
                None => parsed::<ConstantRule>("an", ctx.cfg.an.as_ref())?.unwrap_or(ConstantRule::new(0.0, 1.0)?),
            };
            FamilySpec::constants(rule, t)?
        }
        FamilyArg::User => {
            let path = args
                .user_file
                .clone()
                .or_else(|| ctx.cfg.user_file.clone())
                .ok_or_else(|| CliError::input("--user-file is required for family user"))?;
            let text = std::fs::read_to_string(&path)
                .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
            let file: UserFile = serde_json::from_str(&text)?;
            FamilySpec::user(file.members, file.limit)?
        }
    })
}

/// Default θ-grids. Crossing kinds use a log grid scaled to the family:
/// three decades below to one above `S/T` for figure-1 style families, and
/// `[0.5, 10]·max(a, 1)/T` for constants, where fixed-θ errors `aₙ/θ` at
/// small θ would otherwise swamp the last index.
fn default_grid(kind: KindArg, family: &FamilySpec) -> GridSpec {
    use impact_bundles::funcspace::FamilyKind;
    let t = family.domain_end();
    match kind {
        KindArg::I | KindArg::Mu | KindArg::P | KindArg::Mf => GridSpec::linear(0.0, t, 41),
        KindArg::M => GridSpec::linear(t / 40.0, t, 40),
        _ => match &family.kind {
            FamilyKind::ConstantSeq { rule, .. } => {
                let s = rule.limit.max(1.0) / t;
                GridSpec::log(0.5 * s, 10.0 * s, 20)
            }
            _ => {
                let z0 = family.limit.eval(0.0).unwrap_or(0.0);
                let s = if z0 > 0.0 { z0 / t } else { 1.0 / t };
                GridSpec::log(0.01 * s, 10.0 * s, 30)
            }
        },
    }
}
