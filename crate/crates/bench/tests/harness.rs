use std::time::Duration;

use erastar_bench::plot::{cost_time_scatter, time_ratio_histogram};
use erastar_bench::*;
use erastar_core::{Arithmetic, Cell, CornerRule, MazeSpec, Planner, RandomMapSpec};

fn quick(sources: Vec<MapSource>, runs: usize) -> BenchConfig {
    BenchConfig {
        sources,
        runs_per_map: runs,
        planners: Planner::ALL.to_vec(),
        repetitions: 1,
        time_cap: Some(Duration::from_secs(5)),
        ..BenchConfig::default()
    }
}

fn open_map(seed: u64) -> MapSource {
    MapSource::random("open", RandomMapSpec {
        width: 10,
        height: 10,
        obstacle_ratio: 0.0,
        rect_min: 1,
        rect_max: 1,
        seed,
    })
}

fn run(planner_times: &[(Planner, f64)], opt: f64) -> RunRecord {
    RunRecord {
        map_id: "m".into(),
        group: "g".into(),
        run: 0,
        start: Cell::new(0, 0),
        goal: Cell::new(1, 1),
        arithmetic: Arithmetic::Float,
        corner_rule: CornerRule::CutAllowed,
        optimal: Some(opt),
        outcomes: planner_times
            .iter()
            .map(|&(p, t)| {
                (p, PlannerOutcome {
                    length: opt,
                    orthogonal: 0,
                    diagonal: 1,
                    expansions: 1,
                    fail: false,
                    timed_out: false,
                    time_s: t,
                })
            })
            .collect(),
    }
}

#[test]
fn empty_map_rows_have_equal_lengths() {
    let out = run_benchmark(&quick(vec![open_map(0)], 3)).unwrap();
    assert_eq!(out.records.len(), 3);
    for r in &out.records {
        let lengths: Vec<f64> = r.outcomes.iter().map(|(_, o)| o.length).collect();
        assert!(lengths.iter().all(|&l| l == lengths[0]), "{lengths:?}");
    }
}

#[test]
fn forty_three_maps_times_thirty_runs() {
    let sources: Vec<MapSource> = (0..43).map(open_map).collect();
    let mut cfg = quick(sources, 30);
    cfg.planners = vec![Planner::Era];
    assert_eq!(run_benchmark(&cfg).unwrap().records.len(), 1290);
}

#[test]
fn relaxed_planners_never_beat_dijkstra_in_bench_rows() {
    let sources = vec![
        MapSource::random("r", RandomMapSpec {
            width: 60,
            height: 60,
            obstacle_ratio: 0.3,
            rect_min: 2,
            rect_max: 8,
            seed: 9,
        }),
        MapSource::maze("m", MazeSpec { width: 61, height: 61, corridor: 2, seed: 2 }),
    ];
    let out = run_benchmark(&quick(sources, 40)).unwrap();
    for r in &out.records {
        let opt = r.outcome(Planner::Dijkstra).unwrap();
        if opt.fail {
            continue;
        }
        for (p, o) in &r.outcomes {
            assert!(o.fail || o.length >= opt.length - 1e-9, "{p} beat the optimum");
        }
    }
}

#[test]
fn summary_tables_match_hand_arithmetic() {
    let records: Vec<RunRecord> = [(2.0, 1.0), (4.0, 2.0), (6.0, 3.0)]
        .into_iter()
        .map(|(a, b)| run(&[(Planner::AstarT, a), (Planner::Era, b)], 3.0))
        .collect();
    let s = summarize(&records).unwrap();
    let all = s.groups.last().unwrap();
    assert_eq!(all.time_ratio(Planner::AstarT, Planner::Era), Some(2.0));
    assert_eq!(all.stats(Planner::Era).unwrap().optimal_pct, Some(100.0));
    assert_eq!(all.stats(Planner::Era).unwrap().rank_pct, vec![100.0, 0.0]);
}

#[test]
fn summaries_ignore_csv_column_order() {
    let out = run_benchmark(&quick(vec![open_map(1), open_map(2)], 4)).unwrap();
    let mut buf = Vec::new();
    write_records(&mut buf, &out.records).unwrap();
    let text = String::from_utf8(buf).unwrap();
    // no field is quoted, so a plain split is enough to reverse the columns
    let reversed: String = text
        .lines()
        .map(|l| l.split(',').rev().collect::<Vec<_>>().join(",") + "\n")
        .collect();
    let a = read_records(text.as_bytes()).unwrap();
    let b = read_records(reversed.as_bytes()).unwrap();
    assert_eq!(a, b);
    assert_eq!(summarize(&a).unwrap().to_text(), summarize(&b).unwrap().to_text());
}

#[test]
fn unit_ratios_fill_a_single_histogram_bin() {
    let records: Vec<RunRecord> = (0..6).map(|_| run(&[(Planner::Era, 1.0), (Planner::RaWot, 1.0)], 1.0)).collect();
    let doc = time_ratio_histogram(&records, Planner::RaWot, Planner::Era);
    let bars: Vec<&str> = doc.lines().filter(|l| l.contains("fill=\"#1f77b4\" fill-opacity=\"0.8\"")).collect();
    assert_eq!(bars.len(), 1);
}

#[test]
fn single_run_scatter_has_one_point_per_planner() {
    let r = run(&[(Planner::Era, 1.0), (Planner::RaWot, 2.0), (Planner::AstarT, 3.0)], 4.0);
    let doc = cost_time_scatter(&[&r], &[Planner::Era, Planner::RaWot, Planner::AstarT], "g");
    assert_eq!(doc.matches("<circle").count(), 3);
    assert!(doc.starts_with("<svg") && doc.trim_end().ends_with("</svg>"));
}
