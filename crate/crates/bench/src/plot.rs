//! SVG figures from a run table.

use std::path::{Path, PathBuf};

use erastar_core::Planner;

use crate::record::RunRecord;
use crate::svg::{Axes, Svg};
use crate::BenchError;

const HIST_BINS: usize = 20;

fn color(p: Planner) -> &'static str {
    match p {
        Planner::Era => "#d62728",
        Planner::RaWot => "#1f77b4",
        Planner::AstarT => "#2ca02c",
        Planner::Dijkstra => "#7f7f7f",
    }
}

fn file_safe(s: &str) -> String {
    s.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' { c } else { '_' }).collect()
}

fn range(xs: impl Iterator<Item = f64>) -> (f64, f64) {
    xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), x| (lo.min(x), hi.max(x)))
}

/// Writes every figure into `out_dir` and returns the file paths.
pub fn emit_plots(records: &[RunRecord], out_dir: &Path) -> Result<Vec<PathBuf>, BenchError> {
    let first = records.first().ok_or(BenchError::EmptyInput)?;
    let planners: Vec<Planner> = first.outcomes.iter().map(|(p, _)| *p).collect();
    std::fs::create_dir_all(out_dir)?;
    let mut written = Vec::new();
    let mut save = |name: String, doc: String| -> Result<(), BenchError> {
        let path = out_dir.join(name);
        std::fs::write(&path, doc)?;
        written.push(path);
        Ok(())
    };

    let pair = if planners.contains(&Planner::Era) && planners.contains(&Planner::RaWot) {
        Some((Planner::RaWot, Planner::Era))
    } else {
        (planners.len() >= 2).then(|| (planners[1], planners[0]))
    };
    if let Some((num, den)) = pair {
        save("time_ratio_hist.svg".into(), time_ratio_histogram(records, num, den))?;
    }
    let mut groups: Vec<&str> = Vec::new();
    for r in records {
        if !groups.contains(&r.group.as_str()) {
            groups.push(&r.group);
        }
    }
    for g in &groups {
        let rs: Vec<&RunRecord> = records.iter().filter(|r| r.group == *g).collect();
        save(format!("cost_time_{}.svg", file_safe(g)), cost_time_scatter(&rs, &planners, g))?;
    }
    save("time_per_length_box.svg".into(), time_per_length_boxes(records, &planners))?;
    save("mean_std_rects.svg".into(), mean_std_rectangles(records, &planners))?;
    Ok(written)
}

/// Histogram of per-run `time(num) / time(den)`.
pub fn time_ratio_histogram(records: &[RunRecord], num: Planner, den: Planner) -> String {
    let ratios: Vec<f64> = records
        .iter()
        .filter_map(|r| Some(r.outcome(num)?.time_s / r.outcome(den)?.time_s))
        .filter(|x| x.is_finite())
        .collect();
    let mut svg = Svg::new(&format!("Per-run time ratio {num} / {den} ({} runs)", ratios.len()));
    let (mut lo, mut hi) = range(ratios.iter().copied());
    if !lo.is_finite() {
        (lo, hi) = (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        (lo, hi) = (lo - 0.5, hi + 0.5);
    }
    let width = (hi - lo) / HIST_BINS as f64;
    let mut counts = [0usize; HIST_BINS];
    for x in &ratios {
        counts[(((x - lo) / width) as usize).min(HIST_BINS - 1)] += 1;
    }
    let top = counts.iter().copied().max().unwrap_or(0).max(1) as f64;
    let ax = Axes::exact((lo, hi), (0.0, top * 1.05));
    ax.draw(&mut svg, &format!("time {num} / time {den}"), "runs", true);
    for (k, &c) in counts.iter().enumerate().filter(|(_, &c)| c > 0) {
        let x0 = ax.px(lo + k as f64 * width);
        let x1 = ax.px(lo + (k + 1) as f64 * width);
        let y = ax.py(c as f64);
        svg.rect(x0, y, x1 - x0 - 1.0, ax.py(0.0) - y, "#1f77b4", 0.8);
    }
    if (lo..=hi).contains(&1.0) {
        svg.line(ax.px(1.0), ax.py(0.0), ax.px(1.0), ax.py(top * 1.05), "black");
    }
    svg.finish()
}

/// Path cost against wall time, one colour per planner.
pub fn cost_time_scatter(records: &[&RunRecord], planners: &[Planner], group: &str) -> String {
    let points: Vec<(Planner, f64, f64)> = records
        .iter()
        .flat_map(|r| r.outcomes.iter())
        .filter(|(_, o)| !o.fail)
        .map(|(p, o)| (*p, o.length, o.time_s * 1e3))
        .collect();
    let mut svg = Svg::new(&format!("Cost vs time — {group}"));
    let ax = Axes::new(range(points.iter().map(|p| p.1)), range(points.iter().map(|p| p.2)));
    ax.draw(&mut svg, "path cost", "time (ms)", true);
    for (p, x, y) in &points {
        svg.circle(ax.px(*x), ax.py(*y), 2.5, color(*p));
    }
    legend(&mut svg, planners);
    svg.finish()
}

fn quantile(sorted: &[f64], q: f64) -> f64 {
    let pos = q * (sorted.len() - 1) as f64;
    let (k, f) = (pos.floor() as usize, pos.fract());
    if k + 1 < sorted.len() {
        sorted[k] * (1.0 - f) + sorted[k + 1] * f
    } else {
        sorted[k]
    }
}

/// Box plots of time per unit of optimal length.
pub fn time_per_length_boxes(records: &[RunRecord], planners: &[Planner]) -> String {
    let series: Vec<(Planner, Vec<f64>)> = planners
        .iter()
        .map(|&p| {
            let mut xs: Vec<f64> = records
                .iter()
                .filter_map(|r| {
                    let opt = r.optimal.filter(|x| x.is_finite() && *x > 0.0)?;
                    Some(r.outcome(p)?.time_s * 1e6 / opt)
                })
                .collect();
            xs.sort_by(f64::total_cmp);
            (p, xs)
        })
        .collect();
    let mut svg = Svg::new("Time per unit of optimal length");
    let ax = Axes::new((0.0, planners.len() as f64), range(series.iter().flat_map(|s| s.1.iter().copied())));
    ax.draw(&mut svg, "planner", "time / optimal length (µs)", false);
    for (k, (p, xs)) in series.iter().enumerate() {
        let cx = ax.px(k as f64 + 0.5);
        svg.text(cx, ax.py_bottom() + 18.0, "middle", p.name());
        if xs.is_empty() {
            continue;
        }
        let [lo, q1, q2, q3, hi] = [0.0, 0.25, 0.5, 0.75, 1.0].map(|q| quantile(xs, q));
        let half = (ax.px(1.0) - ax.px(0.0)) * 0.2;
        svg.line(cx, ax.py(lo), cx, ax.py(hi), "black");
        svg.rect(cx - half, ax.py(q3), 2.0 * half, ax.py(q1) - ax.py(q3), color(*p), 0.5);
        svg.line(cx - half, ax.py(q2), cx + half, ax.py(q2), "black");
    }
    svg.finish()
}

/// One rectangle per planner spanning mean ± std of cost and time.
pub fn mean_std_rectangles(records: &[RunRecord], planners: &[Planner]) -> String {
    let stats: Vec<(Planner, [f64; 4])> = planners
        .iter()
        .filter_map(|&p| {
            let pts: Vec<(f64, f64)> = records
                .iter()
                .filter_map(|r| r.outcome(p).filter(|o| !o.fail).map(|o| (o.length, o.time_s * 1e3)))
                .collect();
            if pts.is_empty() {
                return None;
            }
            let n = pts.len() as f64;
            let (mc, mt) = (pts.iter().map(|x| x.0).sum::<f64>() / n, pts.iter().map(|x| x.1).sum::<f64>() / n);
            let sc = (pts.iter().map(|x| (x.0 - mc).powi(2)).sum::<f64>() / n).sqrt();
            let st = (pts.iter().map(|x| (x.1 - mt).powi(2)).sum::<f64>() / n).sqrt();
            Some((p, [mc, sc, mt, st]))
        })
        .collect();
    let mut svg = Svg::new("Mean ± std of cost and time");
    let ax = Axes::new(
        range(stats.iter().flat_map(|(_, s)| [s[0] - s[1], s[0] + s[1]])),
        range(stats.iter().flat_map(|(_, s)| [s[2] - s[3], s[2] + s[3]])),
    );
    ax.draw(&mut svg, "path cost", "time (ms)", true);
    for (p, [mc, sc, mt, st]) in &stats {
        let (x0, x1) = (ax.px(mc - sc), ax.px(mc + sc));
        let (y0, y1) = (ax.py(mt + st), ax.py(mt - st));
        svg.rect(x0, y0, x1 - x0, y1 - y0, color(*p), 0.2);
        svg.circle(ax.px(*mc), ax.py(*mt), 4.0, color(*p));
    }
    legend(&mut svg, planners);
    svg.finish()
}

fn legend(svg: &mut Svg, planners: &[Planner]) {
    let entries: Vec<(&str, &str)> = planners.iter().map(|p| (p.name(), color(*p))).collect();
    svg.legend(&entries);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::tests::{outcome, record};

    fn sample() -> Vec<RunRecord> {
        (0..10)
            .map(|k| {
                let opt = 10.0 + k as f64;
                record(if k < 5 { "small maps" } else { "big" }, k, opt, vec![
                    (Planner::Era, outcome(opt + 1.0, 0.001 * (k + 1) as f64)),
                    (Planner::RaWot, outcome(opt, 0.002 * (k + 1) as f64)),
                    (Planner::AstarT, outcome(opt, 0.003)),
                ])
            })
            .collect()
    }

    #[test]
    fn writes_all_figures() {
        let dir = tempfile::tempdir().unwrap();
        let files = emit_plots(&sample(), dir.path()).unwrap();
        let names: Vec<String> = files.iter().map(|p| p.file_name().unwrap().to_string_lossy().into_owned()).collect();
        assert_eq!(names, [
            "time_ratio_hist.svg",
            "cost_time_small_maps.svg",
            "cost_time_big.svg",
            "time_per_length_box.svg",
            "mean_std_rects.svg"
        ]);
        for f in &files {
            let doc = std::fs::read_to_string(f).unwrap();
            assert!(doc.ends_with("</svg>\n") && !doc.contains("NaN"), "{f:?}");
        }
    }

    #[test]
    fn histogram_counts_every_ratio() {
        // every ratio is exactly 2, so one bar holds all ten runs
        let doc = time_ratio_histogram(&sample(), Planner::RaWot, Planner::Era);
        assert!(doc.contains("(10 runs)"));
        assert!(!doc.contains("NaN"));
    }

    #[test]
    fn empty_input_is_an_error() {
        assert!(matches!(emit_plots(&[], Path::new("/tmp")), Err(BenchError::EmptyInput)));
    }
}
