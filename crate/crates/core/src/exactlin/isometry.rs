use num_traits::ToPrimitive;

use super::enumerate::{theta_coefficients, DEFAULT_NODE_BUDGET};
use super::gram::GramMatrix;
use crate::error::{Error, Result};
use crate::represent::{find_representation_with, RepOutcome};

/// Decides whether two lattices are isometric.
///
/// Rank, determinant and theta counts up to the largest diagonal entry are
/// compared first; a full-rank representation is then searched in both
/// directions. Running out of budget is an error, never `false`.
pub fn isometry_test(g1: &GramMatrix, g2: &GramMatrix) -> Result<bool> {
    isometry_test_with(g1, g2, DEFAULT_NODE_BUDGET)
}

pub fn isometry_test_with(g1: &GramMatrix, g2: &GramMatrix, budget: u64) -> Result<bool> {
    if g1.rank() != g2.rank() || g1.determinant() != g2.determinant() {
        return Ok(false);
    }
    let bound = g1
        .max_diagonal()
        .max(g2.max_diagonal())
        .to_u64()
        .ok_or(Error::Overflow)?;
    if theta_coefficients(g1, bound, budget)? != theta_coefficients(g2, bound, budget)? {
        return Ok(false);
    }
    for (a, b) in [(g1, g2), (g2, g1)] {
        match find_representation_with(a, b, budget)?.outcome {
            RepOutcome::Found(_) => {}
            RepOutcome::NotRepresented => return Ok(false),
            RepOutcome::Unknown { budget } => return Err(Error::BudgetExceeded { budget }),
        }
    }
    Ok(true)
}
