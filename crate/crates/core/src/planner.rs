//! Uniform entry point over the four planners.

use std::fmt;

use crate::baselines::{astar_t, dijkstra, ra_star_wot};
use crate::grid::{Cell, GridMap};
use crate::lattice::Cost;
use crate::path::PathResult;
use crate::penalty::PenaltyTables;
use crate::search::{era_star, SearchError, SearchOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Planner {
    Era,
    RaWot,
    AstarT,
    Dijkstra,
}

impl Planner {
    pub const ALL: [Planner; 4] = [Planner::Era, Planner::RaWot, Planner::AstarT, Planner::Dijkstra];

    pub fn name(self) -> &'static str {
        match self {
            Planner::Era => "era",
            Planner::RaWot => "ra_wot",
            Planner::AstarT => "astar_t",
            Planner::Dijkstra => "dijkstra",
        }
    }

    /// Whether the planner always returns a shortest path.
    pub fn is_exact(self) -> bool {
        matches!(self, Planner::AstarT | Planner::Dijkstra)
    }

    /// Runs one search plus path reconstruction. `tables` is only read by ERA*;
    /// `options` applies to the single-visit planners.
    pub fn run<C: Cost>(
        self,
        map: &GridMap,
        tables: &PenaltyTables<C>,
        start: Cell,
        goal: Cell,
        options: SearchOptions,
    ) -> Result<PathResult, SearchError> {
        match self {
            Planner::Era => era_star(map, tables, start, goal, options),
            Planner::RaWot => ra_star_wot::<C>(map, start, goal, options),
            Planner::AstarT => astar_t::<C>(map, start, goal),
            Planner::Dijkstra => dijkstra::<C>(map, start, goal),
        }
    }
}

impl fmt::Display for Planner {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Planner {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "era" => Ok(Planner::Era),
            "ra_wot" | "ra" => Ok(Planner::RaWot),
            "astar_t" | "astar" => Ok(Planner::AstarT),
            "dijkstra" => Ok(Planner::Dijkstra),
            other => Err(format!(
                "unknown planner `{other}` (expected era, ra_wot, astar_t or dijkstra)"
            )),
        }
    }
}
