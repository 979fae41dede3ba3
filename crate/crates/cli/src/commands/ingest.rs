// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use impact_bundles::{from_citations, Tail};

use super::Ctx;
use crate::args::IngestArgs;
use crate::config::parsed;
use crate::error::{CliError, CliResult};
use crate::output::write_atomic;

pub fn run(args: &IngestArgs, ctx: &Ctx) -> CliResult<()> {
    let path = args
        .csv
        .clone()
        .or_else(|| ctx.cfg.csv.clone())
        .ok_or_else(|| CliError::input("--csv is required"))?;
    let column = args.column.or(ctx.cfg.column).unwrap_or(0);
    let tail = match args.tail {
        Some(t) => t,
        None => parsed::<Tail>("tail", ctx.cfg.tail.as_ref())?.unwrap_or_default(),
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", path.display())))?;
    let counts = read_counts(&text, column)?;
    if counts.windows(2).any(|w| w[0] < w[1]) {
        eprintln!("warning: citation counts are not in decreasing order; sorting them");
    }
    let f = from_citations(&counts, tail)?;
    let out: PathBuf = args.out.clone().or_else(|| ctx.cfg.out.clone()).unwrap_or_else(|| path.with_extension("json"));
    let mut json = f.to_json();
    json.push('\n');
    write_atomic(&out, json.as_bytes())?;
    let c1 = counts.iter().max().copied().unwrap_or(0);
    println!("N = {}, c1 = {c1}, spec = {}", counts.len(), out.display());
    Ok(())
}

/// Nonnegative integers from one column; a non-numeric first row is a header.
fn read_counts(text: &str, column: usize) -> CliResult<Vec<u64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut counts = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let record = record?;
        if record.iter().all(str::is_empty) {
            continue;
        }
        let field = record
            .get(column)
            .ok_or_else(|| CliError::input(format!("row {}: no column {column}", i + 1)))?;
        match field.parse::<u64>() {
            Ok(c) => counts.push(c),
            Err(_) if i == 0 => {}
            Err(_) => {
                return Err(CliError::input(format!("row {}: {field:?} is not a nonnegative integer", i + 1)));
            }
        }
    }
    if counts.is_empty() {
        return Err(CliError::input("no citation counts found"));
    }
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_is_optional() {
        assert_eq!(read_counts("citations\n5\n3\n1\n", 0).unwrap(), [5, 3, 1]);
        assert_eq!(read_counts("5\n3\n1", 0).unwrap(), [5, 3, 1]);
        assert_eq!(read_counts("id,c\na,5\nb,3\n", 1).unwrap(), [5, 3]);
    }

    #[test]
    fn bad_rows_are_rejected() {
        assert!(read_counts("", 0).is_err());
        assert!(read_counts("c\n", 0).is_err());
        assert!(read_counts("5\n-3\n", 0).is_err());
        assert!(read_counts("5\n2.5\n", 0).is_err());
        assert!(read_counts("5\n3\n", 1).is_err());
    }
}
