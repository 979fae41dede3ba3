// SPDX-License-Identifier: Apache-2.0

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use super::ScenarioResult;

/// Position of a bundle in the PC / PC* / UC diagram.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    PcAndUc,
    PcNotUc,
    UcNotPc,
    PcStarOnly,
}

impl Region {
    fn of(pc: bool, uc: bool) -> Self {
        match (pc, uc) {
            (true, true) => Region::PcAndUc,
            (true, false) => Region::PcNotUc,
            (false, true) => Region::UcNotPc,
            (false, false) => Region::PcStarOnly,
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Region::PcAndUc => "PC & UC",
            Region::PcNotUc => "PC \\ UC",
            Region::UcNotPc => "UC \\ PC",
            Region::PcStarOnly => "PC* \\ (PC | UC)",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassRow {
    pub bundle: String,
    pub pc: bool,
    pub pc_star: bool,
    pub uc: bool,
    pub region: Region,
    pub evidence: Vec<String>,
    /// Evidence scenarios that failed or did not run.
    pub failing: Vec<String>,
}

impl ClassRow {
    pub fn is_flagged(&self) -> bool {
        !self.failing.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub rows: Vec<ClassRow>,
}

// (bundle, PC, PC*, UC, evidence)
const STATED: [(&str, bool, bool, bool, &[&str]); 10] = [
    ("I", true, true, true, &["S1", "S7"]),
    ("mu", true, true, true, &["S7"]),
    ("P", true, true, true, &["S5"]),
    ("h", true, true, false, &["S4", "S8", "S9"]),
    ("g", true, true, false, &["S3", "S7", "S8"]),
    ("h^(p)", true, true, false, &["S4"]),
    ("R", true, true, false, &["S6", "S10"]),
    ("PED", true, true, false, &["S4"]),
    ("Mf", false, true, true, &["S11"]),
    ("M", false, true, false, &["S12"]),
];

/// Builds the membership table and flags rows whose evidence did not pass.
pub fn classify(results: &[ScenarioResult]) -> Classification {
    let rows = STATED
        .iter()
        .map(|&(bundle, pc, pc_star, uc, evidence)| {
            let failing = evidence
                .iter()
                .filter(|id| !results.iter().any(|r| r.id == **id && r.pass))
                .map(|id| id.to_string())
                .collect();
            ClassRow {
                bundle: bundle.into(),
                pc,
                pc_star,
                uc,
                region: Region::of(pc, uc),
                evidence: evidence.iter().map(|s| s.to_string()).collect(),
                failing,
            }
        })
        .collect();
    Classification { rows }
}

impl Classification {
    pub fn row(&self, bundle: &str) -> Option<&ClassRow> {
        self.rows.iter().find(|r| r.bundle == bundle)
    }

    pub fn flagged(&self) -> impl Iterator<Item = &ClassRow> {
        self.rows.iter().filter(|r| r.is_flagged())
    }

    pub fn to_table(&self) -> String {
        let mark = |b: bool| if b { "yes" } else { "no" };
        let mut out = String::new();
        let _ = writeln!(out, "{:<7} {:<4} {:<4} {:<4} {:<16} {:<12} status", "bundle", "PC", "PC*", "UC", "region", "evidence");
        for r in &self.rows {
            let status = if r.is_flagged() { format!("FLAGGED ({})", r.failing.join(",")) } else { "ok".into() };
            let _ = writeln!(
                out,
                "{:<7} {:<4} {:<4} {:<4} {:<16} {:<12} {}",
                r.bundle,
                mark(r.pc),
                mark(r.pc_star),
                mark(r.uc),
                r.region.to_string(),
                r.evidence.join(","),
                status
            );
        }
        out
    }
}
