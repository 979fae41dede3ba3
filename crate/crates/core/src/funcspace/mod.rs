// SPDX-License-Identifier: Apache-2.0

//! Rank-frequency functions on `[0, T]`: exact evaluation, one-sided limits,
//! cumulative integrals, membership tests, distances and canonical families.

mod citations;
mod distance;
mod family;
mod json;
mod model;
mod piecewise;

pub use citations::{from_citations, Tail};
pub use distance::{sup_distance, JUMP_PROBE};
pub use family::{ConstantRule, FamilyKind, FamilySpec};
pub use json::{FunctionSpec, JumpSpec};
pub use model::{Constant, FunctionModel, Membership, PowerComplement, UpperStep, Violation};
pub use piecewise::{Knot, PiecewiseLinear};
