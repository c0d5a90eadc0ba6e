//! Per-group aggregates over a run table.

use std::fmt::Write as _;
use std::io::Write;

use erastar_core::Planner;

use crate::record::RunRecord;
use crate::BenchError;

pub const ALL_GROUPS: &str = "all";

/// Absolute slack when comparing a length with the optimum.
const LENGTH_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Spread {
    pub mean: f64,
    pub std: f64,
    pub max: f64,
}

impl Spread {
    fn of(xs: &[f64]) -> Option<Spread> {
        if xs.is_empty() {
            return None;
        }
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / n;
        Some(Spread {
            mean,
            std: var.sqrt(),
            max: xs.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlannerStats {
    pub planner: Planner,
    /// Runs where the planner returned a path.
    pub solved: usize,
    pub mean_cost: Option<f64>,
    /// Percentage of reachable queries answered with an optimal path.
    pub optimal_pct: Option<f64>,
    /// Extra length in percent of the optimum, over non-optimal answers.
    pub extra_pct: Option<Spread>,
    pub mean_time_s: Option<f64>,
    pub median_time_s: Option<f64>,
    pub mean_expansions: Option<f64>,
    pub timed_out: usize,
    /// `rank_pct[k]`: percentage of runs where this planner was the (k+1)-th fastest.
    pub rank_pct: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GroupSummary {
    pub group: String,
    pub runs: usize,
    pub reachable: usize,
    pub planners: Vec<PlannerStats>,
}

impl GroupSummary {
    pub fn stats(&self, planner: Planner) -> Option<&PlannerStats> {
        self.planners.iter().find(|s| s.planner == planner)
    }

    /// Ratio of mean times, `a / b`.
    pub fn time_ratio(&self, a: Planner, b: Planner) -> Option<f64> {
        let ta = self.stats(a)?.mean_time_s?;
        let tb = self.stats(b)?.mean_time_s?;
        (tb > 0.0).then(|| ta / tb)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Summary {
    pub planners: Vec<Planner>,
    /// Planners taking part in the speed ranking.
    pub ranked: Vec<Planner>,
    /// Groups in order of first appearance, then the overall row.
    pub groups: Vec<GroupSummary>,
}

fn mean(xs: impl Iterator<Item = f64>) -> Option<f64> {
    let (sum, n) = xs.fold((0.0, 0usize), |(s, n), x| (s + x, n + 1));
    (n > 0).then(|| sum / n as f64)
}

fn median(mut xs: Vec<f64>) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    xs.sort_by(f64::total_cmp);
    let m = xs.len() / 2;
    Some(if xs.len() % 2 == 1 { xs[m] } else { (xs[m - 1] + xs[m]) / 2.0 })
}

/// Aggregates records per group plus an overall `all` group. Dijkstra only
/// joins the speed ranking when no other planner was run.
pub fn summarize(records: &[RunRecord]) -> Result<Summary, BenchError> {
    let first = records.first().ok_or(BenchError::EmptyInput)?;
    let planners: Vec<Planner> = first.outcomes.iter().map(|(p, _)| *p).collect();
    let mut ranked: Vec<Planner> = planners.iter().copied().filter(|p| *p != Planner::Dijkstra).collect();
    if ranked.is_empty() {
        ranked = planners.clone();
    }

    let mut names: Vec<&str> = Vec::new();
    for r in records {
        if !names.contains(&r.group.as_str()) {
            names.push(&r.group);
        }
    }
    let mut groups: Vec<GroupSummary> = names
        .iter()
        .map(|g| group_summary(g, records.iter().filter(|r| r.group == *g), &planners, &ranked))
        .collect();
    groups.push(group_summary(ALL_GROUPS, records.iter(), &planners, &ranked));
    Ok(Summary { planners, ranked, groups })
}

fn group_summary<'a>(
    name: &str,
    records: impl Iterator<Item = &'a RunRecord> + Clone,
    planners: &[Planner],
    ranked: &[Planner],
) -> GroupSummary {
    let runs = records.clone().count();
    let reachable = records.clone().filter(|r| r.reachable() == Some(true)).count();

    let mut rank_counts = vec![vec![0usize; ranked.len()]; ranked.len()];
    for r in records.clone() {
        let mut order: Vec<(usize, f64)> = ranked
            .iter()
            .enumerate()
            .filter_map(|(k, p)| r.outcome(*p).map(|o| (k, o.time_s)))
            .collect();
        order.sort_by(|a, b| a.1.total_cmp(&b.1));
        for (rank, (k, _)) in order.into_iter().enumerate() {
            rank_counts[k][rank] += 1;
        }
    }

    let stats = planners
        .iter()
        .map(|&planner| {
            let outs = records.clone().filter_map(|r| r.outcome(planner).map(|o| (r, o)));
            let solved: Vec<_> = outs.clone().filter(|(_, o)| !o.fail).collect();
            let mut optimal = 0;
            let mut extra = Vec::new();
            for (r, o) in &solved {
                let Some(opt) = r.optimal.filter(|x| x.is_finite()) else { continue };
                if o.length <= opt + LENGTH_TOLERANCE * opt.max(1.0) {
                    optimal += 1;
                } else if opt > 0.0 {
                    extra.push((o.length / opt - 1.0) * 100.0);
                }
            }
            let rank_pct = ranked
                .iter()
                .position(|p| *p == planner)
                .map(|k| {
                    rank_counts[k]
                        .iter()
                        .map(|&c| if runs == 0 { 0.0 } else { 100.0 * c as f64 / runs as f64 })
                        .collect()
                })
                .unwrap_or_default();
            PlannerStats {
                planner,
                solved: solved.len(),
                mean_cost: mean(solved.iter().map(|(_, o)| o.length)),
                optimal_pct: (reachable > 0).then(|| 100.0 * optimal as f64 / reachable as f64),
                extra_pct: Spread::of(&extra).or(if optimal > 0 { Some(Spread::default()) } else { None }),
                mean_time_s: mean(outs.clone().map(|(_, o)| o.time_s)),
                median_time_s: median(outs.clone().map(|(_, o)| o.time_s).collect()),
                mean_expansions: mean(outs.clone().map(|(_, o)| o.expansions as f64)),
                timed_out: outs.filter(|(_, o)| o.timed_out).count(),
                rank_pct,
            }
        })
        .collect();
    GroupSummary {
        group: name.to_string(),
        runs,
        reachable,
        planners: stats,
    }
}

fn cell(x: Option<f64>, decimals: usize) -> String {
    match x {
        Some(v) if v.is_finite() => format!("{v:.decimals$}"),
        _ => "n/a".to_string(),
    }
}

impl Summary {
    /// Long-format CSV: one row per (group, planner).
    pub fn write_csv<W: Write>(&self, out: W) -> Result<(), BenchError> {
        let mut w = csv::Writer::from_writer(out);
        let mut header: Vec<String> = [
            "group", "planner", "runs", "reachable", "solved", "mean_cost", "optimal_pct",
            "extra_mean_pct", "extra_std_pct", "extra_max_pct", "mean_time_s", "median_time_s",
            "mean_expansions", "timed_out",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        header.extend((1..=self.ranked.len()).map(|k| format!("rank{k}_pct")));
        header.extend(self.planners.iter().map(|p| format!("time_ratio_vs_{p}")));
        w.write_record(&header)?;
        for g in &self.groups {
            for s in &g.planners {
                let mut row = vec![
                    g.group.clone(),
                    s.planner.to_string(),
                    g.runs.to_string(),
                    g.reachable.to_string(),
                    s.solved.to_string(),
                    cell(s.mean_cost, 6),
                    cell(s.optimal_pct, 3),
                    cell(s.extra_pct.map(|e| e.mean), 3),
                    cell(s.extra_pct.map(|e| e.std), 3),
                    cell(s.extra_pct.map(|e| e.max), 3),
                    cell(s.mean_time_s, 6),
                    cell(s.median_time_s, 6),
                    cell(s.mean_expansions, 1),
                    s.timed_out.to_string(),
                ];
                row.extend((0..self.ranked.len()).map(|k| cell(s.rank_pct.get(k).copied(), 1)));
                row.extend(self.planners.iter().map(|&b| cell(g.time_ratio(s.planner, b), 3)));
                w.write_record(&row)?;
            }
        }
        w.flush()?;
        Ok(())
    }

    /// Aligned plain-text tables, one per metric.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let metric = |title: &str, f: &dyn Fn(&PlannerStats) -> String| {
            let mut rows = vec![std::iter::once("group".to_string())
                .chain(self.planners.iter().map(|p| p.to_string()))
                .collect::<Vec<_>>()];
            for g in &self.groups {
                rows.push(
                    std::iter::once(format!("{} ({})", g.group, g.runs))
                        .chain(g.planners.iter().map(f))
                        .collect(),
                );
            }
            format!("{title}\n{}\n", align(&rows))
        };
        out += &metric("Optimal paths (% of reachable queries)", &|s| cell(s.optimal_pct, 1));
        out += &metric("Mean path cost", &|s| cell(s.mean_cost, 2));
        out += &metric("Extra length of non-optimal paths, % (mean ± std / max)", &|s| match s.extra_pct {
            Some(e) => format!("{:.2} ± {:.2} / {:.2}", e.mean, e.std, e.max),
            None => "n/a".into(),
        });
        out += &metric("Mean time (ms)", &|s| cell(s.mean_time_s.map(|t| t * 1e3), 3));
        out += &metric("Median time (ms)", &|s| cell(s.median_time_s.map(|t| t * 1e3), 3));
        out += &metric("Mean expansions", &|s| cell(s.mean_expansions, 1));

        let mut rows = vec![vec!["group".to_string()]];
        let pairs: Vec<(Planner, Planner)> = self
            .planners
            .iter()
            .enumerate()
            .flat_map(|(k, &a)| self.planners[k + 1..].iter().map(move |&b| (a, b)))
            .collect();
        rows[0].extend(pairs.iter().map(|(a, b)| format!("{b}/{a}")));
        for g in &self.groups {
            let mut row = vec![g.group.clone()];
            row.extend(pairs.iter().map(|&(a, b)| cell(g.time_ratio(b, a), 3)));
            rows.push(row);
        }
        if !pairs.is_empty() {
            let _ = writeln!(out, "Time ratios (ratio of mean times)\n{}", align(&rows));
        }

        let mut rows = vec![std::iter::once("group / planner".to_string())
            .chain((1..=self.ranked.len()).map(|k| format!("rank {k} %")))
            .collect::<Vec<_>>()];
        for g in &self.groups {
            for s in g.planners.iter().filter(|s| !s.rank_pct.is_empty()) {
                rows.push(
                    std::iter::once(format!("{} / {}", g.group, s.planner))
                        .chain(s.rank_pct.iter().map(|&r| cell((g.runs > 0).then_some(r), 1)))
                        .collect(),
                );
            }
        }
        let _ = writeln!(out, "Speed ranking\n{}", align(&rows));
        out
    }
}

fn align(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, s)| {
                let pad = widths[c] - s.chars().count();
                if c == 0 { format!("{s}{}", " ".repeat(pad)) } else { format!("{}{s}", " ".repeat(pad)) }
            })
            .collect();
        out += line.join("  ").trim_end();
        out.push('\n');
    }
    out
}
