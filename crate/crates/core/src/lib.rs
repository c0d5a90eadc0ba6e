//! Grid pathfinding on 8-connected maps with ERA*, a relaxed A* that
//! propagates detour penalties read from 28 precomputed 3×3 matrices, plus
//! A*, relaxed A* and Dijkstra baselines.
//!
//! ```
//! use erastar_core::{era_star, Cell, GridMap, PenaltyTables, SearchOptions};
//!
//! let map = GridMap::empty(5, 5).unwrap();
//! let tables = PenaltyTables::<f64>::build().unwrap();
//! let path = era_star(&map, &tables, Cell::new(0, 0), Cell::new(4, 4), SearchOptions::default()).unwrap();
//! assert!((path.length - 4.0 * 2f64.sqrt()).abs() < 1e-12);
//! ```

pub mod baselines;
pub mod grid;
pub mod lattice;
pub mod path;
pub mod penalty;
pub mod planner;
mod queue;
pub mod search;

pub use baselines::{astar_t, dijkstra, ra_star_wot, ra_star_wot_with_stats, VisitStats};
pub use grid::{
    generate_maze, generate_random_map, parse_movingai_map, Cell, CornerRule, GridError, GridMap,
    MazeSpec, Move, RandomMapSpec, Terrain, MOVES,
};
pub use lattice::{Arithmetic, Cost, Lattice};
pub use path::{validate_path, PathResult, PathViolation};
pub use penalty::{
    classify_regime, incremental_penalty, octile_h, GoalOffset, Octant, PenaltyError,
    PenaltyTables, Proximity, RegimeId, REGIME_COUNT,
};
pub use planner::Planner;
pub use queue::TieBreak;
pub use search::{
    check_d_identity, era_star, era_star_search, reconstruct_path, SearchError, SearchExit,
    SearchOptions, SearchState,
};
