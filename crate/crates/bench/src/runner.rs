//! Timed benchmark runs.

use std::time::{Duration, Instant};

use erastar_core::{
    astar_t, Arithmetic, Cell, CornerRule, Cost, GridMap, Lattice, PathResult, PenaltyTables,
    Planner, SearchOptions, TieBreak,
};
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;

use crate::manifest::MapSource;
use crate::record::{PlannerOutcome, RunRecord};
use crate::BenchError;

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub sources: Vec<MapSource>,
    pub runs_per_map: usize,
    pub planners: Vec<Planner>,
    pub seed: u64,
    pub arithmetic: Arithmetic,
    pub corner_rule: CornerRule,
    pub tie_break: TieBreak,
    /// Timed repetitions per planner and query; the median is recorded.
    pub repetitions: usize,
    /// A run whose first repetition exceeds this is flagged as timed out and
    /// not repeated. The search itself is not interrupted.
    pub time_cap: Option<Duration>,
    /// Worker threads; 0 uses all cores.
    pub jobs: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sources: Vec::new(),
            runs_per_map: 30,
            planners: vec![Planner::Era, Planner::RaWot, Planner::AstarT],
            seed: 0,
            arithmetic: Arithmetic::Float,
            corner_rule: CornerRule::CutAllowed,
            tie_break: TieBreak::Fifo,
            repetitions: 3,
            time_cap: Some(Duration::from_secs(60)),
            jobs: 0,
        }
    }
}

#[derive(Debug, Default)]
pub struct BenchOutput {
    /// Sorted by source order, then run index.
    pub records: Vec<RunRecord>,
    /// Sources that could not be used, with the reason.
    pub skipped: Vec<(String, String)>,
}

struct Query<'a> {
    source: &'a MapSource,
    map: &'a GridMap,
    run: usize,
    start: Cell,
    goal: Cell,
}

/// Endpoint stream for one map: uniform over free cells, resampled until
/// start ≠ goal.
pub fn sample_endpoints(map: &GridMap, seed: u64, count: usize) -> Option<Vec<(Cell, Cell)>> {
    let free: Vec<Cell> = map.free_cells().collect();
    if free.len() < 2 {
        return None;
    }
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let pairs = (0..count)
        .map(|_| loop {
            let s = free[rng.random_range(0..free.len())];
            let g = free[rng.random_range(0..free.len())];
            if s != g {
                break (s, g);
            }
        })
        .collect();
    Some(pairs)
}

fn map_seed(seed: u64, index: usize) -> u64 {
    seed ^ (index as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15)
}

pub fn run_benchmark(cfg: &BenchConfig) -> Result<BenchOutput, BenchError> {
    if cfg.planners.is_empty() {
        return Err(BenchError::Config("no planners selected".into()));
    }
    if cfg.repetitions == 0 {
        return Err(BenchError::Config("repetitions must be at least 1".into()));
    }
    let mut output = BenchOutput::default();
    let mut maps = Vec::new();
    for (k, source) in cfg.sources.iter().enumerate() {
        match source.load() {
            Ok(map) => maps.push((k, source, map.with_corner_rule(cfg.corner_rule))),
            Err(e) => output.skipped.push((source.id.clone(), e.to_string())),
        }
    }
    let mut queries = Vec::new();
    for (k, source, map) in &maps {
        match sample_endpoints(map, map_seed(cfg.seed, *k), cfg.runs_per_map) {
            Some(pairs) => queries.extend(pairs.into_iter().enumerate().map(|(run, (start, goal))| Query {
                source,
                map,
                run,
                start,
                goal,
            })),
            None => output
                .skipped
                .push((source.id.clone(), "fewer than two free cells".into())),
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| BenchError::Config(e.to_string()))?;
    output.records = pool.install(|| match cfg.arithmetic {
        Arithmetic::Float => execute::<f64>(cfg, &queries),
        Arithmetic::Lattice => execute::<Lattice>(cfg, &queries),
    })?;
    Ok(output)
}

fn execute<C: Cost + Send + Sync>(cfg: &BenchConfig, queries: &[Query<'_>]) -> Result<Vec<RunRecord>, BenchError> {
    let tables = PenaltyTables::<C>::build().expect("penalty tables verify against direct evaluation");
    let options = SearchOptions {
        max_nb_iter: None,
        tie_break: cfg.tie_break,
    };
    // par_iter().collect() keeps input order, so rows come out sorted.
    queries
        .par_iter()
        .map(|q| {
            let mut outcomes = Vec::with_capacity(cfg.planners.len());
            let mut optimal = None;
            for &planner in &cfg.planners {
                let (result, outcome) = timed(cfg, || planner.run(q.map, &tables, q.start, q.goal, options))?;
                if planner.is_exact() && optimal.is_none() {
                    optimal = Some(result.length);
                }
                outcomes.push((planner, outcome));
            }
            let optimal = match optimal {
                Some(len) => len,
                None => astar_t::<Lattice>(q.map, q.start, q.goal)?.length,
            };
            Ok(RunRecord {
                map_id: q.source.id.clone(),
                group: q.source.group.clone(),
                run: q.run,
                start: q.start,
                goal: q.goal,
                arithmetic: cfg.arithmetic,
                corner_rule: cfg.corner_rule,
                optimal: Some(optimal),
                outcomes,
            })
        })
        .collect()
}

fn timed<F>(cfg: &BenchConfig, mut solve: F) -> Result<(PathResult, PlannerOutcome), BenchError>
where
    F: FnMut() -> Result<PathResult, erastar_core::SearchError>,
{
    let mut times = Vec::with_capacity(cfg.repetitions);
    let mut result = None;
    let mut timed_out = false;
    for _ in 0..cfg.repetitions {
        let t0 = Instant::now();
        let r = solve()?;
        let dt = t0.elapsed();
        times.push(dt.as_secs_f64());
        result = Some(r);
        if cfg.time_cap.is_some_and(|cap| dt > cap) {
            timed_out = true;
            break;
        }
    }
    let result = result.expect("at least one repetition");
    times.sort_by(f64::total_cmp);
    let outcome = PlannerOutcome {
        length: result.length,
        orthogonal: result.orthogonal_steps,
        diagonal: result.diagonal_steps,
        expansions: result.expansions,
        fail: result.fail,
        timed_out,
        time_s: times[times.len() / 2],
    };
    Ok((result, outcome))
}

#[cfg(test)]
mod tests {
    use super::*;
    use erastar_core::{MazeSpec, RandomMapSpec};

    fn small_config() -> BenchConfig {
        BenchConfig {
            sources: vec![
                MapSource::random("r", RandomMapSpec {
                    width: 30,
                    height: 30,
                    obstacle_ratio: 0.3,
                    rect_min: 1,
                    rect_max: 4,
                    seed: 3,
                }),
                MapSource::maze("m", MazeSpec { width: 21, height: 21, corridor: 1, seed: 1 }),
            ],
            runs_per_map: 8,
            planners: Planner::ALL.to_vec(),
            repetitions: 1,
            ..BenchConfig::default()
        }
    }

    #[test]
    fn endpoints_are_free_distinct_and_seeded() {
        let map = GridMap::from_ascii(&["..@", "@.."]).unwrap();
        let a = sample_endpoints(&map, 4, 50).unwrap();
        assert_eq!(a, sample_endpoints(&map, 4, 50).unwrap());
        assert!(a.iter().all(|&(s, g)| s != g && map.is_free(s) && map.is_free(g)));
        assert!(sample_endpoints(&GridMap::from_ascii(&[".@", "@@"]).unwrap(), 0, 1).is_none());
    }

    #[test]
    fn produces_one_row_per_query_in_order() {
        let out = run_benchmark(&small_config()).unwrap();
        assert!(out.skipped.is_empty());
        assert_eq!(out.records.len(), 16);
        assert!(out.records[..8].iter().all(|r| r.group == "r"));
        assert!(out.records.windows(2).take(7).all(|w| w[0].run + 1 == w[1].run));
        for r in &out.records {
            let opt = r.optimal.unwrap();
            assert_eq!(r.outcome(Planner::Dijkstra).unwrap().length, opt);
            assert!(r.outcome(Planner::Era).unwrap().length >= opt - 1e-9);
        }
    }

    #[test]
    fn jobs_do_not_change_results() {
        let strip = |mut rs: Vec<RunRecord>| {
            for r in &mut rs {
                for (_, o) in &mut r.outcomes {
                    o.time_s = 0.0;
                }
            }
            rs
        };
        let mut cfg = small_config();
        cfg.jobs = 1;
        let serial = strip(run_benchmark(&cfg).unwrap().records);
        cfg.jobs = 4;
        assert_eq!(serial, strip(run_benchmark(&cfg).unwrap().records));
    }

    #[test]
    fn zero_cap_flags_every_run_and_missing_maps_are_skipped() {
        let mut cfg = small_config();
        cfg.time_cap = Some(Duration::ZERO);
        cfg.repetitions = 5;
        cfg.sources.push(MapSource::file("f", "/nonexistent.map".into()));
        let out = run_benchmark(&cfg).unwrap();
        assert_eq!(out.skipped.len(), 1);
        assert!(out.records.iter().flat_map(|r| &r.outcomes).all(|(_, o)| o.timed_out));
    }

    #[test]
    fn optimal_is_computed_without_an_exact_planner() {
        let mut cfg = small_config();
        cfg.planners = vec![Planner::Era];
        cfg.arithmetic = Arithmetic::Lattice;
        let out = run_benchmark(&cfg).unwrap();
        assert!(out.records.iter().all(|r| r.optimal.is_some()));
    }
}
