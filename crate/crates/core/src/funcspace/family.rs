// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::model::FunctionModel;
use crate::error::{Error, Result};

/// `aₙ = limit + scale / n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantRule {
    pub limit: f64,
    pub scale: f64,
}

impl ConstantRule {
    pub fn new(limit: f64, scale: f64) -> Result<Self> {
        if !(limit.is_finite() && scale.is_finite() && limit >= 0.0 && limit + scale.min(0.0) >= 0.0) {
            return Err(Error::domain(format!(
                "constant sequence {limit} + {scale}/n must stay nonnegative"
            )));
        }
        Ok(ConstantRule { limit, scale })
    }

    pub fn value(&self, n: u64) -> f64 {
        self.limit + self.scale / n as f64
    }
}

impl fmt::Display for ConstantRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.limit == 0.0 {
            write!(f, "{}/n", self.scale)
        } else if self.scale == 0.0 {
            write!(f, "{}", self.limit)
        } else if self.scale < 0.0 {
            write!(f, "{}-{}/n", self.limit, -self.scale)
        } else {
            write!(f, "{}+{}/n", self.limit, self.scale)
        }
    }
}

impl FromStr for ConstantRule {
    type Err = Error;

    /// Accepts `b/n`, `a+b/n`, `a-b/n` and `a`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::domain(format!("cannot parse constant sequence rule {s:?}; expected e.g. 1/n or 2+1/n"));
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let num = |t: &str| t.parse::<f64>().map_err(|_| bad());
        let Some(body) = s.strip_suffix("/n") else {
            return ConstantRule::new(num(&s)?, 0.0);
        };
        // split "a+b" / "a-b" at the last sign that is not a leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(i, c)| (c == '+' || c == '-') && !body[..i].ends_with(['e', 'E']))
            .map(|(i, _)| i)
            .last();
        match split {
            None => ConstantRule::new(0.0, num(body)?),
            Some(i) => ConstantRule::new(num(&body[..i])?, num(&body[i..])?),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyKind {
    /// `Zₙ(x) = 1 − xⁿ` on `[0, 1]`, `n ≥ 1`.
    PowerComplementSeq,
    /// Constant functions `aₙ` on `[0, T]`, `n ≥ 1`.
    ConstantSeq { rule: ConstantRule, t: f64 },
    /// Piecewise-linear family through `(0, S)`, `(T/2, S/2)`, `(3T/4, S/n)`,
    /// constant `S/n` on `[3T/4, T]`, `n ≥ 3`.
    Figure1 { s: f64, t: f64 },
    /// Explicit members indexed by increasing `n`.
    User { members: Vec<(u64, FunctionModel)> },
}

/// A sequence of functions together with its declared pointwise limit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub limit: FunctionModel,
}

impl FamilySpec {
    /// `1 − xⁿ` with limit `1` on `[0, 1)`, `0` at `1`.
    pub fn power_complement() -> Self {
        FamilySpec {
            kind: FamilyKind::PowerComplementSeq,
            limit: FunctionModel::upper_step(1.0, 1.0, 1.0, 0.0).expect("valid step"),
        }
    }

    pub fn constants(rule: ConstantRule, t: f64) -> Result<Self> {
        let limit = FunctionModel::constant(rule.limit, t)?;
        Ok(FamilySpec { kind: FamilyKind::ConstantSeq { rule, t }, limit })
    }

    pub fn figure1(s: f64, t: f64) -> Result<Self> {
        if !(s.is_finite() && s > 0.0 && t.is_finite() && t > 0.0) {
            return Err(Error::domain(format!("figure-1 family needs S, T > 0, got S = {s}, T = {t}")));
        }
        let limit = FunctionModel::from_points(&[(0.0, s), (t / 2.0, s / 2.0), (0.75 * t, 0.0), (t, 0.0)])?;
        Ok(FamilySpec { kind: FamilyKind::Figure1 { s, t }, limit })
    }

    /// Members must be continuous, nonincreasing and share the limit's domain.
    pub fn user(mut members: Vec<(u64, FunctionModel)>, limit: FunctionModel) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::domain("user family has no members"));
        }
        members.sort_by_key(|(n, _)| *n);
        if members.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::domain("user family indices must be distinct"));
        }
        for (n, f) in &members {
            if let super::Membership::NotMember(v) = f.is_in_u() {
                return Err(Error::domain(format!("member {n} is not continuous and decreasing: {v}")));
            }
            if f.domain_end() != limit.domain_end() {
                return Err(Error::domain(format!("member {n} has a different domain from the limit")));
            }
        }
        Ok(FamilySpec { kind: FamilyKind::User { members }, limit })
    }

    pub fn id(&self) -> String {
        match &self.kind {
            FamilyKind::PowerComplementSeq => "power_complement".into(),
            FamilyKind::ConstantSeq { rule, .. } => format!("constants({rule})"),
            FamilyKind::Figure1 { s, t } => format!("figure1(S={s},T={t})"),
            FamilyKind::User { .. } => "user".into(),
        }
    }

    pub fn domain_end(&self) -> f64 {
        self.limit.domain_end()
    }

    pub fn min_index(&self) -> u64 {
        match &self.kind {
            FamilyKind::Figure1 { .. } => 3,
            FamilyKind::User { members } => members[0].0,
            _ => 1,
        }
    }

    /// Indices available in a user family; `None` for generated families.
    pub fn declared_indices(&self) -> Option<Vec<u64>> {
        match &self.kind {
            FamilyKind::User { members } => Some(members.iter().map(|(n, _)| *n).collect()),
            _ => None,
        }
    }

    /// The `n`-th member.
    pub fn member(&self, n: u64) -> Result<FunctionModel> {
        if n < self.min_index() {
            return Err(Error::domain(format!("index {n} below family start {}", self.min_index())));
        }
        match &self.kind {
            FamilyKind::PowerComplementSeq => {
                let n = u32::try_from(n).map_err(|_| Error::domain(format!("index {n} too large")))?;
                FunctionModel::power_complement(n)
            }
            FamilyKind::ConstantSeq { rule, t } => FunctionModel::constant(rule.value(n), *t),
            FamilyKind::Figure1 { s, t } => {
                let tail = s / n as f64;
                FunctionModel::from_points(&[(0.0, *s), (t / 2.0, s / 2.0), (0.75 * t, tail), (*t, tail)])
            }
            FamilyKind::User { members } => members
                .iter()
                .find(|(m, _)| *m == n)
                .map(|(_, f)| f.clone())
                .ok_or_else(|| Error::domain(format!("user family has no member {n}"))),
        }
    }
}
