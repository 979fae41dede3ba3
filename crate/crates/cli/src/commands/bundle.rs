// SPDX-License-Identifier: Apache-2.0

use impact_bundles::{bundle_curve_with, BundleCurve, FunctionModel, GridSpec};

use super::{check_grid, crossing_kind, Ctx};
use crate::args::{BundleArgs, Format, KindArg};
use crate::error::CliResult;
use crate::output::{exact, opt_exact, sig12, Sink};

pub fn run(args: &BundleArgs, ctx: &Ctx) -> CliResult<()> {
    let f = ctx.function(args.function.as_deref())?;
    let kind = ctx.kind(&args.kind)?;
    let bundle = ctx.bundle_kind(kind, &args.kind)?;
    let grid = ctx.grid(&args.grid, default_grid(kind, &f))?;
    let thetas = check_grid(kind, &grid)?;
    let curve = bundle_curve_with(&f, &bundle, &thetas, ctx.exec)?;

    let out = args.out.out.as_deref().or(ctx.cfg.out.as_deref());
    let bytes = match ctx.format(args.out.format)?.unwrap_or(Format::Csv) {
        Format::Csv => to_csv(&curve)?,
        Format::Json => {
            let mut v = serde_json::to_vec_pretty(&curve)?;
            v.push(b'\n');
            v
        }
    };
    let sink = Sink::new(out);
    sink.data(&bytes)?;
    let present = curve.values.iter().filter(|v| v.is_some()).count();
    sink.status(&format!(
        "{}: theta0 = {}, {present} of {} grid points admissible",
        curve.measure,
        sig12(curve.theta0),
        curve.thetas.len()
    ));
    if let Some(p) = out {
        sink.status(&format!("wrote {}", p.display()));
    }
    Ok(())
}

pub fn to_csv(curve: &BundleCurve) -> CliResult<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["theta", "value", "admissible"])?;
    for (th, v, ok) in curve.rows() {
        w.write_record([exact(th), opt_exact(v), ok.to_string()])?;
    }
    w.into_inner().map_err(|e| crate::error::CliError::input(e.to_string()))
}

/// Linear over `[0, T]` for the integral-type kinds, log-spaced over six
/// decades around `F(0)/T` for the crossing kinds.
fn default_grid(kind: KindArg, f: &FunctionModel) -> GridSpec {
    let t = f.domain_end();
    if crossing_kind(kind) {
        let z0 = f.eval(0.0).unwrap_or(0.0);
        let scale = if z0 > 0.0 { z0 / t } else { 1.0 / t };
        return GridSpec::log(scale * 1e-3, scale * 1e3, 61);
    }
    match kind {
        KindArg::M => GridSpec::linear(t / 100.0, t, 100),
        _ => GridSpec::linear(0.0, t, 101),
    }
}
