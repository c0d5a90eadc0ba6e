//! 8-connected occupancy grids.
//!
//! Cells are addressed as `(i, j)` = (row, column) with row 0 at the top.
//! Internally the occupancy matrix carries a one-cell obstacle border so the
//! planners can step to any of the 8 neighbors without bounds checks; the
//! padded index of a cell is what the search state arrays are keyed on.

mod generate;
mod movingai;

pub use generate::{generate_maze, generate_random_map, MazeSpec, RandomMapSpec};
pub use movingai::parse_movingai_map;

use std::fmt;

use thiserror::Error;

use crate::lattice::Lattice;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GridError {
    #[error("malformed header at line {line}: {reason}")]
    MalformedHeader { line: usize, reason: String },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unknown terrain character {ch:?} at row {row}, column {col}")]
    UnknownTerrainChar { row: usize, col: usize, ch: char },
    #[error("cell {0} is out of bounds")]
    OutOfBounds(Cell),
    #[error("cell {0} is an obstacle")]
    OnObstacle(Cell),
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
}

/// Grid coordinate: `i` is the row, `j` the column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub i: usize,
    pub j: usize,
}

impl Cell {
    pub const fn new(i: usize, j: usize) -> Self {
        Cell { i, j }
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl std::str::FromStr for Cell {
    type Err = String;

    /// Parses `i,j`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (i, j) = s
            .split_once(',')
            .ok_or_else(|| format!("expected `row,col`, got `{s}`"))?;
        let parse = |v: &str| {
            v.trim()
                .parse::<usize>()
                .map_err(|e| format!("bad coordinate `{v}`: {e}"))
        };
        Ok(Cell::new(parse(i)?, parse(j)?))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Terrain {
    Free,
    Obstacle,
}

/// Whether a diagonal move may pass between two orthogonal obstacles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum CornerRule {
    /// Only the target cell must be free.
    #[default]
    CutAllowed,
    /// Both orthogonal cells adjacent to the diagonal must also be free.
    CutForbidden,
}

impl CornerRule {
    pub fn as_str(self) -> &'static str {
        match self {
            CornerRule::CutAllowed => "cut-allowed",
            CornerRule::CutForbidden => "cut-forbidden",
        }
    }
}

impl std::str::FromStr for CornerRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cut-allowed" | "allowed" => Ok(CornerRule::CutAllowed),
            "cut-forbidden" | "forbidden" => Ok(CornerRule::CutForbidden),
            other => Err(format!(
                "unknown corner rule `{other}` (expected cut-allowed or cut-forbidden)"
            )),
        }
    }
}

/// One of the eight G8 moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Move {
    pub di: i8,
    pub dj: i8,
}

/// The eight moves in row-major order of the 3×3 neighborhood. Every planner
/// enumerates neighbors in this order.
pub const MOVES: [Move; 8] = [
    Move::new(-1, -1),
    Move::new(-1, 0),
    Move::new(-1, 1),
    Move::new(0, -1),
    Move::new(0, 1),
    Move::new(1, -1),
    Move::new(1, 0),
    Move::new(1, 1),
];

impl Move {
    pub const fn new(di: i8, dj: i8) -> Self {
        Move { di, dj }
    }

    pub fn is_diagonal(self) -> bool {
        self.di != 0 && self.dj != 0
    }

    /// 1 for orthogonal moves, √2 for diagonals.
    pub fn step_cost(self) -> Lattice {
        if self.is_diagonal() {
            Lattice::SQRT2
        } else {
            Lattice::ONE
        }
    }

    /// Position of this move in [`MOVES`].
    pub fn index(self) -> usize {
        MOVES
            .iter()
            .position(|m| *m == self)
            .expect("null move has no index")
    }

    /// Row-major slot in a 3×3 matrix centred on the current cell.
    pub fn matrix_slot(self) -> usize {
        ((self.di + 1) * 3 + (self.dj + 1)) as usize
    }

    /// Move between two cells at Chebyshev distance 1.
    pub fn between(from: Cell, to: Cell) -> Option<Move> {
        let di = to.i as i64 - from.i as i64;
        let dj = to.j as i64 - from.j as i64;
        if (di, dj) == (0, 0) || di.abs() > 1 || dj.abs() > 1 {
            None
        } else {
            Some(Move::new(di as i8, dj as i8))
        }
    }
}

/// Immutable occupancy grid.
#[derive(Clone, PartialEq, Eq)]
pub struct GridMap {
    width: usize,
    height: usize,
    corner_rule: CornerRule,
    stride: usize,
    // (height + 2) × (width + 2), border cells blocked.
    blocked: Vec<bool>,
    offsets: [isize; 8],
}

impl fmt::Debug for GridMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GridMap")
            .field("width", &self.width)
            .field("height", &self.height)
            .field("corner_rule", &self.corner_rule)
            .field("obstacles", &self.obstacle_count())
            .finish()
    }
}

impl GridMap {
    /// Obstacle-free map.
    pub fn empty(width: usize, height: usize) -> Result<Self, GridError> {
        Self::from_terrain(width, height, vec![Terrain::Free; width * height])
    }

    /// Builds a map from row-major terrain with [`CornerRule::CutAllowed`].
    pub fn from_terrain(
        width: usize,
        height: usize,
        terrain: Vec<Terrain>,
    ) -> Result<Self, GridError> {
        if width == 0 || height == 0 {
            return Err(GridError::DimensionMismatch(format!(
                "map must be at least 1×1, got {width}×{height}"
            )));
        }
        if terrain.len() != width * height {
            return Err(GridError::DimensionMismatch(format!(
                "expected {} cells for {width}×{height}, got {}",
                width * height,
                terrain.len()
            )));
        }
        let stride = width + 2;
        if stride.saturating_mul(height + 2) > u32::MAX as usize {
            return Err(GridError::DimensionMismatch(format!(
                "{width}×{height} exceeds the supported cell count"
            )));
        }
        let mut blocked = vec![true; stride * (height + 2)];
        for (k, t) in terrain.iter().enumerate() {
            let (i, j) = (k / width, k % width);
            blocked[(i + 1) * stride + j + 1] = *t == Terrain::Obstacle;
        }
        let s = stride as isize;
        let offsets = MOVES.map(|m| m.di as isize * s + m.dj as isize);
        Ok(GridMap {
            width,
            height,
            corner_rule: CornerRule::CutAllowed,
            stride,
            blocked,
            offsets,
        })
    }

    /// Parses rows of `.` (free) and `@` (obstacle). Convenient in tests.
    pub fn from_ascii(rows: &[&str]) -> Result<Self, GridError> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.chars().count());
        let mut terrain = Vec::with_capacity(width * height);
        for (row, line) in rows.iter().enumerate() {
            if line.chars().count() != width {
                return Err(GridError::DimensionMismatch(format!(
                    "row {row} has {} characters, expected {width}",
                    line.chars().count()
                )));
            }
            for (col, ch) in line.chars().enumerate() {
                terrain.push(match ch {
                    '.' => Terrain::Free,
                    '@' => Terrain::Obstacle,
                    ch => return Err(GridError::UnknownTerrainChar { row, col, ch }),
                });
            }
        }
        Self::from_terrain(width, height, terrain)
    }

    /// Same occupancy under a different corner rule.
    pub fn with_corner_rule(mut self, corner_rule: CornerRule) -> Self {
        self.corner_rule = corner_rule;
        self
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn corner_rule(&self) -> CornerRule {
        self.corner_rule
    }

    pub fn in_bounds(&self, c: Cell) -> bool {
        c.i < self.height && c.j < self.width
    }

    pub fn terrain(&self, c: Cell) -> Option<Terrain> {
        self.in_bounds(c).then(|| {
            if self.blocked[self.index(c)] {
                Terrain::Obstacle
            } else {
                Terrain::Free
            }
        })
    }

    pub fn is_free(&self, c: Cell) -> bool {
        self.terrain(c) == Some(Terrain::Free)
    }

    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        (0..self.height).flat_map(move |i| (0..self.width).map(move |j| Cell::new(i, j)))
    }

    pub fn free_cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells().filter(move |c| self.is_free(*c))
    }

    pub fn free_count(&self) -> usize {
        self.width * self.height - self.obstacle_count()
    }

    pub fn obstacle_count(&self) -> usize {
        self.cells().filter(|c| !self.is_free(*c)).count()
    }

    /// Row-major terrain, without the padding border.
    pub fn terrain_rows(&self) -> Vec<Terrain> {
        self.cells().map(|c| self.terrain(c).unwrap()).collect()
    }

    /// Checks that `c` may be used as a search endpoint.
    pub fn check_endpoint(&self, c: Cell) -> Result<(), GridError> {
        match self.terrain(c) {
            None => Err(GridError::OutOfBounds(c)),
            Some(Terrain::Obstacle) => Err(GridError::OnObstacle(c)),
            Some(Terrain::Free) => Ok(()),
        }
    }

    /// Free G8 neighbors of `c` with their exact step costs, in [`MOVES`] order.
    pub fn neighbors(&self, c: Cell) -> Result<Vec<(Cell, Lattice)>, GridError> {
        self.check_endpoint(c)?;
        let mut out = Vec::with_capacity(8);
        self.for_each_neighbor(self.index(c), |n, k| {
            out.push((self.cell(n), MOVES[k].step_cost()));
        });
        Ok(out)
    }

    /// Encodes the map in the Moving AI `.map` format using `.` and `@`.
    pub fn to_movingai_string(&self) -> String {
        let mut out = String::with_capacity((self.width + 1) * self.height + 48);
        out.push_str(&format!(
            "type octile\nheight {}\nwidth {}\nmap\n",
            self.height, self.width
        ));
        for i in 0..self.height {
            for j in 0..self.width {
                out.push(if self.is_free(Cell::new(i, j)) { '.' } else { '@' });
            }
            out.push('\n');
        }
        out
    }

    // ---- padded-index helpers used by the planners ----

    /// Length of the per-cell state arrays (padded grid).
    #[inline]
    pub(crate) fn padded_len(&self) -> usize {
        self.blocked.len()
    }

    #[inline]
    pub(crate) fn index(&self, c: Cell) -> usize {
        (c.i + 1) * self.stride + c.j + 1
    }

    #[inline]
    pub(crate) fn cell(&self, index: usize) -> Cell {
        Cell::new(index / self.stride - 1, index % self.stride - 1)
    }

    /// Row and column of a padded index, without the border shift.
    #[inline]
    pub(crate) fn padded_coords(&self, index: usize) -> (i64, i64) {
        ((index / self.stride) as i64, (index % self.stride) as i64)
    }

    /// Calls `visit(neighbor_index, move_index)` for every admissible move.
    #[inline]
    pub(crate) fn for_each_neighbor(&self, index: usize, mut visit: impl FnMut(usize, usize)) {
        let forbid = self.corner_rule == CornerRule::CutForbidden;
        for (k, &off) in self.offsets.iter().enumerate() {
            let n = index.wrapping_add_signed(off);
            if self.blocked[n] {
                continue;
            }
            if forbid && MOVES[k].is_diagonal() {
                let m = MOVES[k];
                let vertical = index.wrapping_add_signed(m.di as isize * self.stride as isize);
                let horizontal = index.wrapping_add_signed(m.dj as isize);
                if self.blocked[vertical] || self.blocked[horizontal] {
                    continue;
                }
            }
            visit(n, k);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sqrt2() -> Lattice {
        Lattice::SQRT2
    }

    #[test]
    fn interior_cell_has_eight_neighbors() {
        let map = GridMap::empty(5, 5).unwrap();
        let n = map.neighbors(Cell::new(2, 2)).unwrap();
        assert_eq!(n.len(), 8);
        assert_eq!(n.iter().filter(|(_, c)| *c == Lattice::ONE).count(), 4);
        assert_eq!(n.iter().filter(|(_, c)| *c == sqrt2()).count(), 4);
    }

    #[test]
    fn corner_cell_has_three_neighbors() {
        let map = GridMap::empty(5, 5).unwrap();
        let n = map.neighbors(Cell::new(0, 0)).unwrap();
        let cells: Vec<Cell> = n.iter().map(|(c, _)| *c).collect();
        assert_eq!(cells, vec![Cell::new(0, 1), Cell::new(1, 0), Cell::new(1, 1)]);
    }

    #[test]
    fn corner_rule_controls_squeezing_between_obstacles() {
        let rows = [".@.", "@..", "..."];
        let allowed = GridMap::from_ascii(&rows).unwrap();
        let forbidden = allowed.clone().with_corner_rule(CornerRule::CutForbidden);
        let c = Cell::new(1, 1);
        let has = |m: &GridMap, t: Cell| m.neighbors(c).unwrap().iter().any(|(n, _)| *n == t);

        assert!(has(&allowed, Cell::new(0, 0)));
        let cost = allowed
            .neighbors(c)
            .unwrap()
            .into_iter()
            .find(|(n, _)| *n == Cell::new(0, 0))
            .unwrap()
            .1;
        assert_eq!(cost, sqrt2());
        assert!(!has(&forbidden, Cell::new(0, 0)));
        // (0,2) touches the obstacle at (0,1)
        assert!(!has(&forbidden, Cell::new(0, 2)));
        assert!(has(&forbidden, Cell::new(2, 2)));
    }

    #[test]
    fn neighbors_rejects_bad_cells() {
        let map = GridMap::from_ascii(&[".@", ".."]).unwrap();
        assert_eq!(
            map.neighbors(Cell::new(0, 1)),
            Err(GridError::OnObstacle(Cell::new(0, 1)))
        );
        assert_eq!(
            map.neighbors(Cell::new(2, 0)),
            Err(GridError::OutOfBounds(Cell::new(2, 0)))
        );
    }

    #[test]
    fn move_helpers() {
        assert_eq!(MOVES.len(), 8);
        for (k, m) in MOVES.iter().enumerate() {
            assert_eq!(m.index(), k);
            assert_ne!(m.matrix_slot(), 4);
        }
        assert_eq!(
            Move::between(Cell::new(3, 3), Cell::new(2, 4)),
            Some(Move::new(-1, 1))
        );
        assert_eq!(Move::between(Cell::new(3, 3), Cell::new(3, 5)), None);
    }

    #[test]
    fn cell_from_str() {
        assert_eq!("4,7".parse::<Cell>(), Ok(Cell::new(4, 7)));
        assert!("4;7".parse::<Cell>().is_err());
    }

    fn arb_map() -> impl Strategy<Value = GridMap> {
        (1usize..9, 1usize..9).prop_flat_map(|(w, h)| {
            (
                prop::collection::vec(prop::bool::weighted(0.3), w * h),
                prop::bool::ANY,
            )
                .prop_map(move |(cells, forbid)| {
                    let terrain = cells
                        .into_iter()
                        .map(|b| if b { Terrain::Obstacle } else { Terrain::Free })
                        .collect();
                    let rule = if forbid {
                        CornerRule::CutForbidden
                    } else {
                        CornerRule::CutAllowed
                    };
                    GridMap::from_terrain(w, h, terrain)
                        .unwrap()
                        .with_corner_rule(rule)
                })
        })
    }

    proptest! {
        #[test]
        fn neighbors_are_free_adjacent_and_symmetric(map in arb_map()) {
            for c in map.free_cells() {
                let ns = map.neighbors(c).unwrap();
                prop_assert!(ns.len() <= 8);
                for (n, cost) in ns {
                    prop_assert!(map.is_free(n));
                    let m = Move::between(c, n);
                    prop_assert!(m.is_some());
                    prop_assert_eq!(cost, m.unwrap().step_cost());
                    let back = map.neighbors(n).unwrap();
                    prop_assert!(back.iter().any(|(b, _)| *b == c));
                }
            }
        }

        #[test]
        fn movingai_round_trip(map in arb_map()) {
            let text = map.to_movingai_string();
            let parsed = parse_movingai_map(&text).unwrap().with_corner_rule(map.corner_rule());
            prop_assert_eq!(parsed, map);
        }
    }
}
