//! Planner output shared by ERA* and the baselines.

use thiserror::Error;

use crate::grid::{Cell, CornerRule, GridMap, Move};
use crate::lattice::Lattice;

#[derive(Debug, Clone, PartialEq)]
pub struct PathResult {
    /// Start to goal inclusive; empty on failure.
    pub path: Vec<Cell>,
    pub orthogonal_steps: u64,
    pub diagonal_steps: u64,
    /// `orthogonal + √2·diagonal`, or `+∞` on failure.
    pub length: f64,
    pub fail: bool,
    /// Number of cells expanded by the planner.
    pub expansions: usize,
}

impl PathResult {
    pub fn failure(expansions: usize) -> Self {
        PathResult {
            path: Vec::new(),
            orthogonal_steps: 0,
            diagonal_steps: 0,
            length: f64::INFINITY,
            fail: true,
            expansions,
        }
    }

    /// Builds a result from a start-to-goal cell sequence. Steps are counted
    /// by kind and √2 is applied once at the end.
    pub fn from_cells(path: Vec<Cell>, expansions: usize) -> Self {
        let (mut orthogonal, mut diagonal) = (0u64, 0u64);
        for pair in path.windows(2) {
            if pair[0].i == pair[1].i || pair[0].j == pair[1].j {
                orthogonal += 1;
            } else {
                diagonal += 1;
            }
        }
        PathResult {
            path,
            orthogonal_steps: orthogonal,
            diagonal_steps: diagonal,
            length: orthogonal as f64 + diagonal as f64 * std::f64::consts::SQRT_2,
            fail: false,
            expansions,
        }
    }

    /// Exact length, `None` on failure.
    pub fn exact_length(&self) -> Option<Lattice> {
        (!self.fail).then(|| Lattice::new(self.orthogonal_steps as i64, self.diagonal_steps as i64))
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathViolation {
    #[error("successful result with an empty path")]
    Empty,
    #[error("path starts at {found}, expected {expected}")]
    WrongStart { expected: Cell, found: Cell },
    #[error("path ends at {found}, expected {expected}")]
    WrongGoal { expected: Cell, found: Cell },
    #[error("path visits blocked or out-of-bounds cell {0}")]
    Blocked(Cell),
    #[error("{from} -> {to} is not a legal move")]
    IllegalStep { from: Cell, to: Cell },
    #[error("reported step counts do not match the path")]
    LengthMismatch,
    #[error("failed result carries a path or finite length")]
    DirtyFailure,
}

/// Checks every structural invariant of a [`PathResult`] against the map.
pub fn validate_path(
    map: &GridMap,
    start: Cell,
    goal: Cell,
    result: &PathResult,
) -> Result<(), PathViolation> {
    if result.fail {
        return if result.path.is_empty() && result.length == f64::INFINITY {
            Ok(())
        } else {
            Err(PathViolation::DirtyFailure)
        };
    }
    let (first, last) = match (result.path.first(), result.path.last()) {
        (Some(f), Some(l)) => (*f, *l),
        _ => return Err(PathViolation::Empty),
    };
    if first != start {
        return Err(PathViolation::WrongStart { expected: start, found: first });
    }
    if last != goal {
        return Err(PathViolation::WrongGoal { expected: goal, found: last });
    }
    if let Some(c) = result.path.iter().find(|c| !map.is_free(**c)) {
        return Err(PathViolation::Blocked(*c));
    }
    for pair in result.path.windows(2) {
        let (from, to) = (pair[0], pair[1]);
        let Some(m) = Move::between(from, to) else {
            return Err(PathViolation::IllegalStep { from, to });
        };
        if map.corner_rule() == CornerRule::CutForbidden && m.is_diagonal() {
            let side_a = Cell::new(to.i, from.j);
            let side_b = Cell::new(from.i, to.j);
            if !map.is_free(side_a) || !map.is_free(side_b) {
                return Err(PathViolation::IllegalStep { from, to });
            }
        }
    }
    let recount = PathResult::from_cells(result.path.clone(), result.expansions);
    if recount.orthogonal_steps != result.orthogonal_steps
        || recount.diagonal_steps != result.diagonal_steps
        || recount.length != result.length
    {
        return Err(PathViolation::LengthMismatch);
    }
    Ok(())
}
