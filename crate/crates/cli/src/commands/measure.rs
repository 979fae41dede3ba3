// SPDX-License-Identifier: Apache-2.0

use impact_bundles::measures::{self, FSpec};
use impact_bundles::{mf_bundle, mlimit_bundle};

use super::{kind_name, Ctx};
use crate::args::{KindArg, MeasureArgs};
use crate::config::json_arg;
use crate::error::{CliError, CliResult};
use crate::output::sig12;

pub fn run(args: &MeasureArgs, ctx: &Ctx) -> CliResult<()> {
    let f = ctx.function(args.function.as_deref())?;
    let kind = ctx.kind(&args.kind)?;
    let theta = || {
        args.theta
            .or(ctx.cfg.theta)
            .ok_or_else(|| CliError::input(format!("--theta is required for kind {}", kind_name(kind))))
    };
    let value = match kind {
        KindArg::I => measures::i_theta(&f, theta()?)?,
        KindArg::Mu => measures::mu_theta(&f, theta()?)?,
        KindArg::P => measures::percentile(&f, theta()?)?,
        KindArg::H => measures::h_theta(&f, theta()?)?,
        KindArg::G => measures::g_theta(&f, theta()?)?,
        KindArg::Kosmulski => measures::kosmulski(&f, theta()?, ctx.p(&args.kind)?)?,
        KindArg::R => measures::r_theta(&f, theta()?)?,
        KindArg::Polar => {
            let phi = args.phi.or(ctx.cfg.phi).ok_or_else(|| CliError::input("--phi is required for kind polar"))?;
            measures::polar(&f, phi)?
        }
        KindArg::Ped => {
            let text = json_arg(args.ped_fn.as_deref(), ctx.cfg.ped_fn.as_ref())?
                .ok_or_else(|| CliError::input("--ped-fn is required for kind ped"))?;
            let curve: FSpec = serde_json::from_str(&text)?;
            measures::ped_measure(&f, &curve)?
        }
        KindArg::Mf => mf_bundle(&f, &ctx.step(&args.kind)?, theta()?)?,
        KindArg::M => mlimit_bundle(&f, theta()?)?,
        KindArg::Function => return Err(CliError::input("kind function is only available to converge")),
    };
    println!("{}", sig12(value));
    Ok(())
}
