//! Reference planners: A* with path tie-breaks, relaxed A* without
//! tie-breaks, and Dijkstra.
//!
//! All three use `BinaryHeap` with lazy deletion and enumerate neighbors in
//! [`crate::grid::MOVES`] order, like ERA*.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::grid::{Cell, GridMap, MOVES};
use crate::lattice::Cost;
use crate::path::PathResult;
use crate::penalty::{octile_h, GoalOffset};
use crate::queue::{MinEntry, Sequencer, TieBreak};
use crate::search::{SearchError, SearchOptions};

const NO_PREDECESSOR: usize = usize::MAX;

fn step_costs<C: Cost>() -> [C; 8] {
    MOVES.map(|m| C::from_lattice(m.step_cost()))
}

fn walk_back(map: &GridMap, predecessor: &[usize], start: usize, goal: usize) -> Vec<Cell> {
    let mut path = vec![map.cell(goal)];
    let mut cur = goal;
    while cur != start {
        cur = predecessor[cur];
        path.push(map.cell(cur));
    }
    path.reverse();
    path
}

/// Octile heuristic from padded coordinates.
fn octile_to<C: Cost>(map: &GridMap, goal: usize) -> impl Fn(i64, i64) -> C {
    let (gi, gj) = map.padded_coords(goal);
    move |i, j| C::from_lattice(octile_h(GoalOffset::new(gj - j, gi - i)))
}

/// Padded coordinates of the neighbor reached by move `k`.
#[inline]
fn shifted((i, j): (i64, i64), k: usize) -> (i64, i64) {
    (i + MOVES[k].di as i64, j + MOVES[k].dj as i64)
}

/// Queue entry ordered by `f`, then larger `g`, then insertion order.
#[derive(Debug, Clone, Copy)]
struct PathTieEntry<C> {
    f: C,
    g: C,
    seq: u32,
    index: u32,
}

impl<C: Cost> PartialEq for PathTieEntry<C> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<C: Cost> Eq for PathTieEntry<C> {}

impl<C: Cost> Ord for PathTieEntry<C> {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .f
            .cmp_cost(&self.f)
            .then_with(|| self.g.cmp_cost(&other.g))
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

impl<C: Cost> PartialOrd for PathTieEntry<C> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Textbook A* with the octile heuristic. Ties on `f` go to the larger `g`
/// (the deeper node), then to the earlier insertion. Cells whose `g`
/// improves are re-pushed; stale entries are skipped when popped. Optimal.
pub fn astar_t<C: Cost>(map: &GridMap, start: Cell, goal: Cell) -> Result<PathResult, SearchError> {
    map.check_endpoint(start)?;
    map.check_endpoint(goal)?;
    let n = map.padded_len();
    let (s, t) = (map.index(start), map.index(goal));
    let h = octile_to::<C>(map, t);
    let steps = step_costs::<C>();

    let mut g = vec![C::INFINITY; n];
    let mut closed = vec![false; n];
    let mut predecessor = vec![NO_PREDECESSOR; n];
    let mut seq = Sequencer::new(TieBreak::Fifo);
    let mut open = BinaryHeap::with_capacity(1024);
    g[s] = C::ZERO;
    let (si, sj) = map.padded_coords(s);
    open.push(PathTieEntry {
        f: h(si, sj),
        g: C::ZERO,
        seq: seq.next(),
        index: s as u32,
    });
    let mut expansions = 0;

    while let Some(PathTieEntry { index: c, .. }) = open.pop() {
        let c = c as usize;
        if closed[c] {
            continue;
        }
        closed[c] = true;
        if c == t {
            return Ok(PathResult::from_cells(walk_back(map, &predecessor, s, t), expansions));
        }
        expansions += 1;
        let base = g[c];
        let here = map.padded_coords(c);
        map.for_each_neighbor(c, |nb, k| {
            if closed[nb] {
                return;
            }
            let candidate = base + steps[k];
            if candidate.cmp_cost(&g[nb]) == Ordering::Less {
                g[nb] = candidate;
                predecessor[nb] = c;
                let (i, j) = shifted(here, k);
                open.push(PathTieEntry {
                    f: candidate + h(i, j),
                    g: candidate,
                    seq: seq.next(),
                    index: nb as u32,
                });
            }
        });
    }
    Ok(PathResult::failure(expansions))
}

/// Counters for checking the single-visit discipline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VisitStats {
    /// Cells whose neighbors were generated.
    pub expansions: usize,
    /// `g` entries that went from `+∞` to finite, start excluded.
    pub assignments: usize,
}

/// Relaxed A* without path tie-breaks.
///
/// Same loop shape as ERA*: each cell's `g` is fixed when first assigned and
/// never reopened, the queue is keyed on `f = g + h` with ties in insertion
/// order, and the loop stops as soon as the goal has a `g`.
pub fn ra_star_wot<C: Cost>(
    map: &GridMap,
    start: Cell,
    goal: Cell,
    options: SearchOptions,
) -> Result<PathResult, SearchError> {
    ra_star_wot_with_stats::<C>(map, start, goal, options).map(|(result, _)| result)
}

pub fn ra_star_wot_with_stats<C: Cost>(
    map: &GridMap,
    start: Cell,
    goal: Cell,
    options: SearchOptions,
) -> Result<(PathResult, VisitStats), SearchError> {
    map.check_endpoint(start)?;
    map.check_endpoint(goal)?;
    let max_nb_iter = options.max_nb_iter.unwrap_or(map.width() * map.height());
    let n = map.padded_len();
    let (s, t) = (map.index(start), map.index(goal));
    let h = octile_to::<C>(map, t);
    let steps = step_costs::<C>();

    let mut g = vec![C::INFINITY; n];
    let mut predecessor = vec![NO_PREDECESSOR; n];
    let mut seq = Sequencer::new(options.tie_break);
    let mut open = BinaryHeap::with_capacity(1024);
    g[s] = C::ZERO;
    let (si, sj) = map.padded_coords(s);
    open.push(MinEntry {
        key: h(si, sj),
        seq: seq.next(),
        index: s as u32,
    });
    let mut stats = VisitStats::default();
    #[cfg(debug_assertions)]
    let mut expanded = vec![false; n];

    while !g[t].is_finite() && stats.expansions < max_nb_iter {
        let Some(MinEntry { index: c, .. }) = open.pop() else {
            break;
        };
        let c = c as usize;
        #[cfg(debug_assertions)]
        {
            assert!(!expanded[c], "cell expanded twice");
            expanded[c] = true;
        }
        let base = g[c];
        let here = map.padded_coords(c);
        map.for_each_neighbor(c, |nb, k| {
            if !g[nb].is_finite() {
                let gn = base + steps[k];
                g[nb] = gn;
                predecessor[nb] = c;
                let (i, j) = shifted(here, k);
                open.push(MinEntry {
                    key: gn + h(i, j),
                    seq: seq.next(),
                    index: nb as u32,
                });
                stats.assignments += 1;
            }
        });
        stats.expansions += 1;
    }

    let result = if g[t].is_finite() {
        PathResult::from_cells(walk_back(map, &predecessor, s, t), stats.expansions)
    } else {
        PathResult::failure(stats.expansions)
    };
    Ok((result, stats))
}

/// Exact shortest path, no heuristic. The ground-truth oracle.
pub fn dijkstra<C: Cost>(map: &GridMap, start: Cell, goal: Cell) -> Result<PathResult, SearchError> {
    map.check_endpoint(start)?;
    map.check_endpoint(goal)?;
    let n = map.padded_len();
    let (s, t) = (map.index(start), map.index(goal));
    let steps = step_costs::<C>();

    let mut dist = vec![C::INFINITY; n];
    let mut settled = vec![false; n];
    let mut predecessor = vec![NO_PREDECESSOR; n];
    let mut seq = Sequencer::new(TieBreak::Fifo);
    let mut heap = BinaryHeap::new();
    dist[s] = C::ZERO;
    heap.push(MinEntry {
        key: C::ZERO,
        seq: seq.next(),
        index: s as u32,
    });
    let mut expansions = 0;

    while let Some(MinEntry { index: c, .. }) = heap.pop() {
        let c = c as usize;
        if settled[c] {
            continue;
        }
        settled[c] = true;
        if c == t {
            return Ok(PathResult::from_cells(walk_back(map, &predecessor, s, t), expansions));
        }
        expansions += 1;
        let base = dist[c];
        map.for_each_neighbor(c, |nb, k| {
            let candidate = base + steps[k];
            if !settled[nb] && candidate.cmp_cost(&dist[nb]) == Ordering::Less {
                dist[nb] = candidate;
                predecessor[nb] = c;
                heap.push(MinEntry {
                    key: candidate,
                    seq: seq.next(),
                    index: nb as u32,
                });
            }
        });
    }
    Ok(PathResult::failure(expansions))
}
