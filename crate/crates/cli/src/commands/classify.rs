// SPDX-License-Identifier: Apache-2.0

use impact_bundles::convergence::{classify, run_scenarios_with, Classification, Harness, ScenarioResult};
use serde::Serialize;

use super::Ctx;
use crate::args::ClassifyArgs;
use crate::error::{CliError, CliResult};
use crate::output::write_atomic;

#[derive(Serialize)]
struct ClassifyOutput<'a> {
    classification: &'a Classification,
    scenarios: &'a [ScenarioResult],
}

pub fn run(args: &ClassifyArgs, ctx: &Ctx) -> CliResult<()> {
    let harness = Harness { tolerances: ctx.tolerances(&args.tol)?, exec: ctx.exec, ..Harness::default() };
    let results = run_scenarios_with(&harness);
    let table = classify(&results);
    print!("{}", table.to_table());
    let passed = results.iter().filter(|r| r.pass).count();
    println!("scenarios passed: {passed}/{}", results.len());

    if let Some(out) = args.out.as_deref().or(ctx.cfg.out.as_deref()) {
        let mut v = serde_json::to_vec_pretty(&ClassifyOutput { classification: &table, scenarios: &results })?;
        v.push(b'\n');
        write_atomic(out, &v)?;
        println!("wrote {}", out.display());
    }

    let failing: Vec<String> = results.iter().filter(|r| !r.pass).map(describe_failure).collect();
    if failing.is_empty() {
        Ok(())
    } else {
        Err(CliError::ScenarioFailure(format!("failing scenarios:\n{}", failing.join("\n"))))
    }
}

fn describe_failure(r: &ScenarioResult) -> String {
    let mut reasons: Vec<String> = r.failed_checks().map(|c| c.label.clone()).collect();
    if let Some(e) = &r.error {
        reasons.push(format!("error: {e}"));
    }
    format!("  {}: {}", r.id, reasons.join("; "))
}
