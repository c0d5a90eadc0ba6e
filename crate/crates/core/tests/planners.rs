use erastar_core::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

fn random_map(width: usize, height: usize, ratio: f64, seed: u64) -> GridMap {
    generate_random_map(&RandomMapSpec {
        width,
        height,
        obstacle_ratio: ratio,
        rect_min: 1,
        rect_max: 4,
        seed,
    })
    .unwrap()
}

fn endpoints(map: &GridMap, rng: &mut Xoshiro256PlusPlus) -> Option<(Cell, Cell)> {
    let free: Vec<Cell> = map.free_cells().collect();
    if free.len() < 2 {
        return None;
    }
    let s = free[rng.random_range(0..free.len())];
    let g = free[rng.random_range(0..free.len())];
    Some((s, g))
}

#[test]
fn astar_matches_dijkstra_on_random_instances() {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(11);
    let mut solved = 0;
    for seed in 0..200 {
        let rule = if seed % 2 == 0 { CornerRule::CutAllowed } else { CornerRule::CutForbidden };
        let map = random_map(24, 18, 0.3, seed).with_corner_rule(rule);
        let Some((s, g)) = endpoints(&map, &mut rng) else { continue };
        let exact = dijkstra::<f64>(&map, s, g).unwrap();
        let astar = astar_t::<f64>(&map, s, g).unwrap();
        assert_eq!(astar.fail, exact.fail);
        assert_eq!(astar.exact_length(), exact.exact_length(), "seed {seed} {s}->{g}");
        validate_path(&map, s, g, &astar).unwrap();
        validate_path(&map, s, g, &exact).unwrap();
        solved += usize::from(!exact.fail);
    }
    assert!(solved > 150);
}

#[test]
fn relaxed_planners_never_beat_the_optimum() {
    let tables = PenaltyTables::<f64>::build().unwrap();
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(12);
    for seed in 0..150 {
        let map = random_map(40, 40, 0.25, 1000 + seed);
        let Some((s, g)) = endpoints(&map, &mut rng) else { continue };
        let exact = dijkstra::<Lattice>(&map, s, g).unwrap();
        for planner in [Planner::Era, Planner::RaWot] {
            let r = planner.run(&map, &tables, s, g, SearchOptions::default()).unwrap();
            validate_path(&map, s, g, &r).unwrap();
            assert_eq!(r.fail, exact.fail);
            if let (Some(found), Some(best)) = (r.exact_length(), exact.exact_length()) {
                assert!(found >= best, "{planner} shorter than optimal");
            }
        }
    }
}

#[test]
fn era_and_relaxed_astar_agree_in_lattice_mode() {
    let tables = PenaltyTables::<Lattice>::build().unwrap();
    for seed in 0..12 {
        let map = random_map(12, 10, 0.3, 500 + seed);
        let free: Vec<Cell> = map.free_cells().collect();
        for &s in &free {
            for &g in free.iter().step_by(3) {
                let era = era_star(&map, &tables, s, g, SearchOptions::default()).unwrap();
                let (ra, stats) =
                    ra_star_wot_with_stats::<Lattice>(&map, s, g, SearchOptions::default()).unwrap();
                assert_eq!(era.exact_length(), ra.exact_length());
                assert_eq!(era.expansions, stats.expansions);
                assert_eq!(era.path, ra.path);
            }
        }
    }
}

#[test]
fn relaxed_planners_are_optimal_without_obstacles() {
    let map = GridMap::empty(30, 25).unwrap();
    let tables = PenaltyTables::<f64>::build().unwrap();
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(5);
    for _ in 0..100 {
        let (s, g) = endpoints(&map, &mut rng).unwrap();
        let h = octile_h(GoalOffset::new(g.j as i64 - s.j as i64, g.i as i64 - s.i as i64));
        for planner in Planner::ALL {
            let r = planner.run(&map, &tables, s, g, SearchOptions::default()).unwrap();
            assert_eq!(r.exact_length(), Some(h), "{planner}");
        }
    }
}

#[test]
fn d_identity_holds_on_random_maps() {
    let float = PenaltyTables::<f64>::build().unwrap();
    let lattice = PenaltyTables::<Lattice>::build().unwrap();
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(21);
    for seed in 0..20 {
        let map = random_map(100, 100, 0.2, 40 + seed);
        let (s, g) = endpoints(&map, &mut rng).unwrap();
        let state = era_star_search(&map, &float, s, g, SearchOptions::default()).unwrap();
        assert!(check_d_identity(&state) <= 1e-9);
        let exact = era_star_search(&map, &lattice, s, g, SearchOptions::default()).unwrap();
        assert_eq!(check_d_identity(&exact), 0.0);
    }
}

#[test]
fn d_identity_drift_on_a_maze_is_small() {
    let map = generate_maze(&MazeSpec {
        width: 257,
        height: 257,
        corridor: 1,
        seed: 3,
    })
    .unwrap();
    let tables = PenaltyTables::<f64>::build().unwrap();
    let (s, g) = (Cell::new(1, 1), Cell::new(255, 255));
    let state = era_star_search(&map, &tables, s, g, SearchOptions::default()).unwrap();
    assert_eq!(state.exit, SearchExit::GoalReached);
    let drift = check_d_identity(&state);
    eprintln!("maze D-identity drift (float): {drift:e}");
    assert!(drift < 1e-6);
}

#[test]
fn single_visit_accounting() {
    let tables = PenaltyTables::<f64>::build().unwrap();
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(8);
    for seed in 0..40 {
        let map = random_map(50, 30, 0.3, seed);
        let (s, g) = endpoints(&map, &mut rng).unwrap();
        let state = era_star_search(&map, &tables, s, g, SearchOptions::default()).unwrap();
        let reached = state.reached().count();
        assert_eq!(state.assignments + 1, reached);
        assert_eq!(state.enqueued, reached);
        assert!(state.nb_iter <= map.free_count());
    }
}

#[test]
fn movingai_obstacle_count_matches_character_count() {
    let map = generate_maze(&MazeSpec {
        width: 512,
        height: 512,
        corridor: 8,
        seed: 17,
    })
    .unwrap();
    let text = map.to_movingai_string();
    let body: String = text.lines().skip(4).collect();
    let blocked = body.chars().filter(|c| !matches!(c, '.' | 'G')).count();
    let parsed = parse_movingai_map(&text).unwrap();
    assert_eq!((parsed.width(), parsed.height()), (512, 512));
    assert_eq!(parsed.obstacle_count(), blocked);
}

fn arb_instance() -> impl Strategy<Value = (GridMap, Cell, Cell)> {
    (2usize..16, 2usize..16, 0.0f64..0.5, any::<u64>(), any::<bool>()).prop_flat_map(
        |(w, h, ratio, seed, forbid)| {
            let map = generate_random_map(&RandomMapSpec {
                width: w,
                height: h,
                obstacle_ratio: ratio,
                rect_min: 1,
                rect_max: 3,
                seed,
            })
            .unwrap()
            .with_corner_rule(if forbid { CornerRule::CutForbidden } else { CornerRule::CutAllowed });
            (Just(map), 0..h, 0..w, 0..h, 0..w)
                .prop_map(|(m, si, sj, gi, gj)| (m, Cell::new(si, sj), Cell::new(gi, gj)))
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn results_are_valid_paths((map, s, g) in arb_instance()) {
        prop_assume!(map.is_free(s) && map.is_free(g));
        let tables = PenaltyTables::<f64>::build().unwrap();
        let exact = dijkstra::<Lattice>(&map, s, g).unwrap();
        for planner in Planner::ALL {
            let r = planner.run(&map, &tables, s, g, SearchOptions::default()).unwrap();
            prop_assert!(validate_path(&map, s, g, &r).is_ok(), "{} {:?}", planner, validate_path(&map, s, g, &r));
            prop_assert_eq!(r.fail, exact.fail);
            if planner.is_exact() {
                prop_assert_eq!(r.exact_length(), exact.exact_length());
            }
        }
    }
}
