// SPDX-License-Identifier: Apache-2.0

use std::io::Write;
use std::path::Path;

use tempfile::NamedTempFile;

use crate::error::CliResult;

/// Rounds to 12 significant digits for human-facing output.
pub fn sig12(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let rounded: f64 = format!("{v:.11e}").parse().expect("formatted float parses");
    format!("{rounded:?}")
}

/// Shortest round-trip representation, as used in JSON output.
pub fn exact(v: f64) -> String {
    serde_json::to_string(&v).expect("finite float")
}

pub fn opt_exact(v: Option<f64>) -> String {
    v.map(exact).unwrap_or_default()
}

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CliResult<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// Data goes to `out` when given, else to stdout. Status lines go to stdout
/// in the first case and to stderr in the second so piped data stays clean.
pub struct Sink<'a> {
    out: Option<&'a Path>,
}

impl<'a> Sink<'a> {
    pub fn new(out: Option<&'a Path>) -> Self {
        Sink { out }
    }

    pub fn data(&self, bytes: &[u8]) -> CliResult<()> {
        match self.out {
            Some(p) => write_atomic(p, bytes),
            None => {
                std::io::stdout().write_all(bytes)?;
                Ok(())
            }
        }
    }

    pub fn status(&self, line: &str) {
        match self.out {
            Some(_) => println!("{line}"),
            None => eprintln!("{line}"),
        }
    }
}
