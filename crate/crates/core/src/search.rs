//! ERA* search and backward path reconstruction.
//!
//! The search keeps a single score per cell, the accumulated detour penalty
//! `D`. Expanding a cell `C` picks the penalty matrix for the goal offset of
//! `C` and gives every free, not-yet-scored neighbor `N` the score
//! `D(C) + matrix[C→N]`. Scores are assigned once and never revised. Since
//! `D(n) = g(n) + h(n) - h(start)` along the predecessor chain, ordering the
//! queue by `D` is ordering by `f` without storing `g`.

use std::collections::BinaryHeap;

use thiserror::Error;

use crate::grid::{Cell, GridError, GridMap, Move};
use crate::lattice::Cost;
use crate::path::PathResult;
use crate::penalty::{classify_regime, octile_h, GoalOffset, PenaltyTables};
use crate::queue::{MinEntry, Sequencer, TieBreak};

const NO_PREDECESSOR: usize = usize::MAX;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("invalid endpoint: {0}")]
    InvalidEndpoint(GridError),
    #[error("predecessor chain from the goal is broken at {0}")]
    BrokenChain(Cell),
}

impl From<GridError> for SearchError {
    fn from(e: GridError) -> Self {
        SearchError::InvalidEndpoint(e)
    }
}

/// Why the search loop stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchExit {
    GoalReached,
    QueueExhausted,
    BudgetExhausted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchOptions {
    /// Expansion budget; `None` means `width × height`.
    pub max_nb_iter: Option<usize>,
    pub tie_break: TieBreak,
}

/// Final state of one ERA* search.
#[derive(Debug, Clone)]
pub struct SearchState<C: Cost> {
    width: usize,
    height: usize,
    stride: usize,
    penalty: Vec<C>,
    predecessor: Vec<usize>,
    pub start: Cell,
    pub goal: Cell,
    pub nb_iter: usize,
    pub max_nb_iter: usize,
    pub exit: SearchExit,
    /// Number of `D` entries that went from `+∞` to finite, start excluded.
    pub assignments: usize,
    /// Number of queue insertions, start included.
    pub enqueued: usize,
}

impl<C: Cost> SearchState<C> {
    fn index(&self, c: Cell) -> Option<usize> {
        (c.i < self.height && c.j < self.width).then(|| (c.i + 1) * self.stride + c.j + 1)
    }

    fn cell(&self, index: usize) -> Cell {
        Cell::new(index / self.stride - 1, index % self.stride - 1)
    }

    /// Accumulated detour of `c`; `+∞` if never reached or out of bounds.
    pub fn penalty(&self, c: Cell) -> C {
        self.index(c).map_or(C::INFINITY, |k| self.penalty[k])
    }

    pub fn predecessor(&self, c: Cell) -> Option<Cell> {
        let p = self.predecessor[self.index(c)?];
        (p != NO_PREDECESSOR).then(|| self.cell(p))
    }

    /// Cells with a finite detour.
    pub fn reached(&self) -> impl Iterator<Item = Cell> + '_ {
        self.penalty
            .iter()
            .enumerate()
            .filter(|(_, d)| d.is_finite())
            .map(|(k, _)| self.cell(k))
    }
}

/// Runs ERA* from `start` to `goal`.
pub fn era_star_search<C: Cost>(
    map: &GridMap,
    tables: &PenaltyTables<C>,
    start: Cell,
    goal: Cell,
    options: SearchOptions,
) -> Result<SearchState<C>, SearchError> {
    map.check_endpoint(start)?;
    map.check_endpoint(goal)?;
    let max_nb_iter = options
        .max_nb_iter
        .unwrap_or(map.width() * map.height());

    let n = map.padded_len();
    let mut penalty = vec![C::INFINITY; n];
    let mut predecessor = vec![NO_PREDECESSOR; n];
    let (s, g) = (map.index(start), map.index(goal));
    let (goal_i, goal_j) = map.padded_coords(g);

    let mut seq = Sequencer::new(options.tie_break);
    let mut queue = BinaryHeap::with_capacity(1024);
    penalty[s] = C::ZERO;
    queue.push(MinEntry {
        key: C::ZERO,
        seq: seq.next(),
        index: s as u32,
    });
    let mut enqueued = 1;
    let mut assignments = 0;
    let mut nb_iter = 0;
    #[cfg(debug_assertions)]
    let mut expanded = vec![false; n];

    while !penalty[g].is_finite() && nb_iter < max_nb_iter {
        let Some(MinEntry { index: c, .. }) = queue.pop() else {
            break;
        };
        let c = c as usize;
        #[cfg(debug_assertions)]
        {
            assert!(!expanded[c], "cell expanded twice");
            expanded[c] = true;
        }
        let (ci, cj) = map.padded_coords(c);
        let row = tables.row(classify_regime(GoalOffset::new(goal_j - cj, goal_i - ci)));
        let base = penalty[c];
        map.for_each_neighbor(c, |nb, k| {
            if !penalty[nb].is_finite() {
                predecessor[nb] = c;
                let d = base + row[k];
                debug_assert!(d.is_finite());
                penalty[nb] = d;
                queue.push(MinEntry {
                    key: d,
                    seq: seq.next(),
                    index: nb as u32,
                });
                assignments += 1;
                enqueued += 1;
            }
        });
        nb_iter += 1;
    }

    let exit = if penalty[g].is_finite() {
        SearchExit::GoalReached
    } else if nb_iter >= max_nb_iter {
        SearchExit::BudgetExhausted
    } else {
        SearchExit::QueueExhausted
    };
    Ok(SearchState {
        width: map.width(),
        height: map.height(),
        stride: map.width() + 2,
        penalty,
        predecessor,
        start,
        goal,
        nb_iter,
        max_nb_iter,
        exit,
        assignments,
        enqueued,
    })
}

/// Walks predecessors back from the goal.
pub fn reconstruct_path<C: Cost>(
    state: &SearchState<C>,
    start: Cell,
    goal: Cell,
) -> Result<PathResult, SearchError> {
    if !state.penalty(goal).is_finite() {
        return Ok(PathResult::failure(state.nb_iter));
    }
    let limit = state.width * state.height;
    let mut current = goal;
    let mut path = vec![goal];
    while current != start {
        if path.len() > limit {
            return Err(SearchError::BrokenChain(current));
        }
        current = state
            .predecessor(current)
            .ok_or(SearchError::BrokenChain(current))?;
        path.push(current);
    }
    path.reverse();
    Ok(PathResult::from_cells(path, state.nb_iter))
}

/// Search and reconstruction in one call.
pub fn era_star<C: Cost>(
    map: &GridMap,
    tables: &PenaltyTables<C>,
    start: Cell,
    goal: Cell,
    options: SearchOptions,
) -> Result<PathResult, SearchError> {
    let state = era_star_search(map, tables, start, goal, options)?;
    reconstruct_path(&state, start, goal)
}

/// Largest `|D(c) - (g(c) + h(c) - h(start))|` over reached cells, with `g`
/// recomputed by summing step costs along the predecessor chain.
///
/// Zero in lattice arithmetic; in floating point it measures rounding drift
/// accumulated by the incremental updates.
pub fn check_d_identity<C: Cost>(state: &SearchState<C>) -> f64 {
    let (start, goal) = (state.start, state.goal);
    let offset = |c: Cell| GoalOffset::new(goal.j as i64 - c.j as i64, goal.i as i64 - c.i as i64);
    let h = |c: Cell| C::from_lattice(octile_h(offset(c)));
    let h_start = h(start);

    let mut g: Vec<Option<C>> = vec![None; state.penalty.len()];
    if let Some(s) = state.index(start) {
        g[s] = Some(C::ZERO);
    }
    let mut worst = 0.0f64;
    let mut chain = Vec::new();
    for cell in state.reached() {
        // climb to the nearest cell with a known g, then fill back down
        chain.clear();
        let mut cur = cell;
        while g[state.index(cur).unwrap()].is_none() {
            chain.push(cur);
            match state.predecessor(cur) {
                Some(p) => cur = p,
                None => break,
            }
        }
        let Some(mut acc) = g[state.index(cur).unwrap()] else {
            return f64::INFINITY;
        };
        for &c in chain.iter().rev() {
            let p = state.predecessor(c).unwrap();
            let step = Move::between(p, c).expect("predecessor is adjacent");
            acc = acc + C::from_lattice(step.step_cost());
            g[state.index(c).unwrap()] = Some(acc);
        }
        let gc = g[state.index(cell).unwrap()].unwrap();
        let deviation = (state.penalty(cell) - (gc + h(cell) - h_start)).to_f64().abs();
        worst = worst.max(deviation);
    }
    worst
}
