//! Incremental detour penalties.
//!
//! For a current cell `C` with goal offset `(dx, dy)` and a move to neighbor
//! `N`, the detour grows by
//!
//! ```text
//! dist(C, N) + h(N) - h(C)
//! ```
//!
//! where `h` is the octile (shortcut) distance to the goal. The eight values
//! for a given offset depend only on which *regime* the offset falls in: its
//! direction class (16 rays and open sectors) refined by whether the offset is
//! one step from the goal on an axis or one step off a diagonal. There are 28
//! regimes. [`PenaltyTables`] holds the 3×3 matrix of each regime so the
//! search adds a table entry instead of evaluating `h` per neighbor.
//!
//! The matrices are not transcribed. The seven regimes with a direction in
//! `[0°, 90°)` are evaluated from the formula at a representative offset; the
//! other 21 are 90° rotations of those seven, and each rotation is checked
//! against direct evaluation while building.
//!
//! Offsets use `dx` = column delta and `dy` = row delta to the goal. The
//! direction angle is `atan2(dy, dx)`, but it is never computed: regimes are
//! picked by sign and magnitude comparisons.

use std::fmt;

use thiserror::Error;

use crate::grid::{Move, MOVES};
use crate::lattice::{Cost, Lattice};

pub const REGIME_COUNT: usize = 28;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PenaltyError {
    #[error("rotated matrix for {regime} disagrees with direct evaluation at offset {offset}")]
    ConstructionMismatch { regime: RegimeId, offset: GoalOffset },
    #[error("offset {offset} classified as {regime} but its penalties differ from that table")]
    PartitionMismatch { regime: RegimeId, offset: GoalOffset },
}

/// Goal position relative to the current cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GoalOffset {
    /// Column delta, `j_goal - j_current`.
    pub dx: i64,
    /// Row delta, `i_goal - i_current`.
    pub dy: i64,
}

impl GoalOffset {
    pub const fn new(dx: i64, dy: i64) -> Self {
        GoalOffset { dx, dy }
    }

    pub fn is_zero(self) -> bool {
        self.dx == 0 && self.dy == 0
    }

    /// Offset seen from the neighbor reached by `m`.
    pub fn after(self, m: Move) -> GoalOffset {
        GoalOffset::new(self.dx - m.dj as i64, self.dy - m.di as i64)
    }

    /// Rotation by +90° in the `(dx, dy)` plane.
    pub fn rotated(self) -> GoalOffset {
        GoalOffset::new(-self.dy, self.dx)
    }
}

impl fmt::Display for GoalOffset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(dx={}, dy={})", self.dx, self.dy)
    }
}

/// The same +90° rotation applied to a move (`dj` is the x component).
pub fn rotate_move(m: Move) -> Move {
    Move::new(m.dj, -m.di)
}

/// Obstacle-free G8 distance: `√2·min(|dx|,|dy|) + ||dx| - |dy||`.
#[inline]
pub fn octile_h(off: GoalOffset) -> Lattice {
    let (ax, ay) = (off.dx.abs(), off.dy.abs());
    Lattice::new((ax - ay).abs(), ax.min(ay))
}

/// Detour added by moving `m` from a cell whose goal offset is `off`.
pub fn incremental_penalty(off: GoalOffset, m: Move) -> Lattice {
    m.step_cost() + octile_h(off.after(m)) - octile_h(off)
}

/// Direction of the goal, as one of 8 rays or 8 open sectors between them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Octant {
    Deg0,
    Deg0To45,
    Deg45,
    Deg45To90,
    Deg90,
    Deg90To135,
    Deg135,
    Deg135To180,
    Deg180,
    Deg180To225,
    Deg225,
    Deg225To270,
    Deg270,
    Deg270To315,
    Deg315,
    Deg315To360,
}

impl Octant {
    const ALL: [Octant; 16] = [
        Octant::Deg0,
        Octant::Deg0To45,
        Octant::Deg45,
        Octant::Deg45To90,
        Octant::Deg90,
        Octant::Deg90To135,
        Octant::Deg135,
        Octant::Deg135To180,
        Octant::Deg180,
        Octant::Deg180To225,
        Octant::Deg225,
        Octant::Deg225To270,
        Octant::Deg270,
        Octant::Deg270To315,
        Octant::Deg315,
        Octant::Deg315To360,
    ];

    /// True for the eight rays (axes and diagonals).
    pub fn is_ray(self) -> bool {
        (self as usize).is_multiple_of(2)
    }
}

/// Near-goal refinement of an octant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Proximity {
    General,
    /// On an axis, goal is the orthogonal neighbor (`|dx| + |dy| = 1`).
    Adjacent,
    /// In an open sector, one step off the diagonal (`||dx| - |dy|| = 1`).
    NearDiagonal,
}

/// The seven regimes with direction in `[0°, 90°)`; the rest are rotations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum BaseRegime {
    AxisAdjacent,
    Axis,
    LowerNearDiagonal,
    Lower,
    Diagonal,
    UpperNearDiagonal,
    Upper,
}

impl BaseRegime {
    const ALL: [BaseRegime; 7] = [
        BaseRegime::AxisAdjacent,
        BaseRegime::Axis,
        BaseRegime::LowerNearDiagonal,
        BaseRegime::Lower,
        BaseRegime::Diagonal,
        BaseRegime::UpperNearDiagonal,
        BaseRegime::Upper,
    ];

    /// Representative offset, well inside the regime for the general classes.
    fn representative(self) -> GoalOffset {
        match self {
            BaseRegime::AxisAdjacent => GoalOffset::new(1, 0),
            BaseRegime::Axis => GoalOffset::new(7, 0),
            BaseRegime::LowerNearDiagonal => GoalOffset::new(7, 6),
            BaseRegime::Lower => GoalOffset::new(9, 4),
            BaseRegime::Diagonal => GoalOffset::new(5, 5),
            BaseRegime::UpperNearDiagonal => GoalOffset::new(6, 7),
            BaseRegime::Upper => GoalOffset::new(4, 9),
        }
    }
}

/// Penalty regime of a goal offset. Packs a quarter turn count and a base
/// regime; `index()` is dense in `0..28`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RegimeId {
    quarter: u8,
    base: BaseRegime,
}

impl RegimeId {
    pub fn all() -> impl Iterator<Item = RegimeId> {
        (0..4u8).flat_map(|quarter| BaseRegime::ALL.into_iter().map(move |base| RegimeId { quarter, base }))
    }

    #[inline]
    pub fn index(self) -> usize {
        self.quarter as usize * 7 + self.base as usize
    }

    pub fn octant(self) -> Octant {
        let within = match self.base {
            BaseRegime::AxisAdjacent | BaseRegime::Axis => 0,
            BaseRegime::LowerNearDiagonal | BaseRegime::Lower => 1,
            BaseRegime::Diagonal => 2,
            BaseRegime::UpperNearDiagonal | BaseRegime::Upper => 3,
        };
        Octant::ALL[self.quarter as usize * 4 + within]
    }

    pub fn proximity(self) -> Proximity {
        match self.base {
            BaseRegime::AxisAdjacent => Proximity::Adjacent,
            BaseRegime::LowerNearDiagonal | BaseRegime::UpperNearDiagonal => Proximity::NearDiagonal,
            _ => Proximity::General,
        }
    }

    /// A representative offset inside this regime.
    pub fn representative(self) -> GoalOffset {
        (0..self.quarter).fold(self.base.representative(), |off, _| off.rotated())
    }
}

impl fmt::Debug for RegimeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{:?}", self.octant(), self.proximity())
    }
}

impl fmt::Display for RegimeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Regime of a non-zero offset. Open-sector offsets are tested first since
/// they cover almost every cell; rays and near-goal cases come after.
#[inline]
pub fn classify_regime(off: GoalOffset) -> RegimeId {
    let (dx, dy) = (off.dx, off.dy);
    debug_assert!(!off.is_zero(), "the goal cell has no regime");
    let (ax, ay) = (dx.abs(), dy.abs());
    if dx != 0 && dy != 0 {
        let quarter = match (dx > 0, dy > 0) {
            (true, true) => 0,
            (false, true) => 1,
            (false, false) => 2,
            (true, false) => 3,
        };
        let base = if ax != ay {
            // even quarters start on the x axis, odd ones on the y axis
            let lower = if quarter % 2 == 0 { ax > ay } else { ay > ax };
            let near = (ax - ay).abs() == 1;
            match (lower, near) {
                (true, false) => BaseRegime::Lower,
                (false, false) => BaseRegime::Upper,
                (true, true) => BaseRegime::LowerNearDiagonal,
                (false, true) => BaseRegime::UpperNearDiagonal,
            }
        } else {
            BaseRegime::Diagonal
        };
        RegimeId { quarter, base }
    } else {
        let quarter = if dy == 0 {
            if dx > 0 { 0 } else { 2 }
        } else if dy > 0 {
            1
        } else {
            3
        };
        let base = if ax + ay > 1 {
            BaseRegime::Axis
        } else {
            BaseRegime::AxisAdjacent
        };
        RegimeId { quarter, base }
    }
}

/// The 28 penalty matrices, stored per move in [`MOVES`] order.
#[derive(Clone)]
pub struct PenaltyTables<C: Cost = f64> {
    exact: [[Lattice; 8]; REGIME_COUNT],
    values: [[C; 8]; REGIME_COUNT],
}

impl<C: Cost> fmt::Debug for PenaltyTables<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PenaltyTables")
            .field("regimes", &REGIME_COUNT)
            .finish()
    }
}

fn evaluate(off: GoalOffset) -> [Lattice; 8] {
    MOVES.map(|m| incremental_penalty(off, m))
}

impl<C: Cost> PenaltyTables<C> {
    /// Builds the tables: direct evaluation for the first quarter, rotations
    /// for the other three, each rotation verified against the formula.
    pub fn build() -> Result<Self, PenaltyError> {
        let mut exact = [[Lattice::ZERO; 8]; REGIME_COUNT];
        for base in BaseRegime::ALL {
            let regime = RegimeId { quarter: 0, base };
            exact[regime.index()] = evaluate(base.representative());
        }
        for quarter in 1..4u8 {
            for base in BaseRegime::ALL {
                let from = RegimeId { quarter: quarter - 1, base };
                let to = RegimeId { quarter, base };
                let mut rotated = [Lattice::ZERO; 8];
                for (k, m) in MOVES.iter().enumerate() {
                    rotated[rotate_move(*m).index()] = exact[from.index()][k];
                }
                let offset = to.representative();
                if classify_regime(offset) != to || evaluate(offset) != rotated {
                    return Err(PenaltyError::ConstructionMismatch { regime: to, offset });
                }
                exact[to.index()] = rotated;
            }
        }
        let values = exact.map(|row| row.map(C::from_lattice));
        Ok(PenaltyTables { exact, values })
    }

    /// Penalty for moving `m` from a cell with goal offset `off`.
    #[inline]
    pub fn lookup(&self, off: GoalOffset, m: Move) -> C {
        self.values[classify_regime(off).index()][m.index()]
    }

    /// All eight penalties of a regime, in [`MOVES`] order.
    #[inline]
    pub fn row(&self, regime: RegimeId) -> &[C; 8] {
        &self.values[regime.index()]
    }

    /// Regime matrix laid out as 3×3 around the current cell (centre = 0).
    pub fn matrix(&self, regime: RegimeId) -> [[Lattice; 3]; 3] {
        let mut out = [[Lattice::ZERO; 3]; 3];
        for (k, m) in MOVES.iter().enumerate() {
            out[(m.di + 1) as usize][(m.dj + 1) as usize] = self.exact[regime.index()][k];
        }
        out
    }

    /// Compares every offset with `|dx|, |dy| <= radius` against the formula.
    /// Returns the number of distinct penalty vectors seen.
    pub fn verify_partition(&self, radius: i64) -> Result<usize, PenaltyError> {
        let mut seen = std::collections::HashSet::new();
        for dy in -radius..=radius {
            for dx in -radius..=radius {
                let offset = GoalOffset::new(dx, dy);
                if offset.is_zero() {
                    continue;
                }
                let regime = classify_regime(offset);
                let direct = evaluate(offset);
                if direct != self.exact[regime.index()] {
                    return Err(PenaltyError::PartitionMismatch { regime, offset });
                }
                seen.insert(direct);
            }
        }
        Ok(seen.len())
    }

    /// Text rendering of all matrices, rows top to bottom (`di = -1, 0, 1`).
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for regime in RegimeId::all() {
            out.push_str(&format!(
                "[{:2}] {regime}  representative {}\n",
                regime.index(),
                regime.representative()
            ));
            for row in self.matrix(regime) {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:>8}")).collect();
                out.push_str(&format!("      {}\n", cells.join(" ")));
            }
        }
        out
    }
}
