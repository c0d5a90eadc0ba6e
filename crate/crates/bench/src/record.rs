//! The per-run CSV table.
//!
//! One row per (map, query). Fixed columns come first, then seven columns per
//! planner named `<planner>_<field>`. Readers locate columns by header name,
//! so column order is not significant.

use std::collections::HashMap;
use std::io::{Read, Write};

use erastar_core::{Arithmetic, Cell, CornerRule, Planner};

use crate::BenchError;

pub const SCHEMA_VERSION: u32 = 1;

const FIXED: [&str; 11] = [
    "schema_version",
    "map_id",
    "group",
    "run",
    "start_i",
    "start_j",
    "goal_i",
    "goal_j",
    "arithmetic",
    "corner_rule",
    "optimal_length",
];
const PER_PLANNER: [&str; 7] = [
    "length",
    "orthogonal",
    "diagonal",
    "expansions",
    "fail",
    "timed_out",
    "time_s",
];

#[derive(Debug, Clone, PartialEq)]
pub struct PlannerOutcome {
    /// `+∞` when no path was returned.
    pub length: f64,
    pub orthogonal: u64,
    pub diagonal: u64,
    pub expansions: usize,
    pub fail: bool,
    /// The first repetition exceeded the per-run time cap.
    pub timed_out: bool,
    /// Median wall time of search plus reconstruction, in seconds.
    pub time_s: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub map_id: String,
    pub group: String,
    pub run: usize,
    pub start: Cell,
    pub goal: Cell,
    pub arithmetic: Arithmetic,
    pub corner_rule: CornerRule,
    /// Shortest length from an exact planner, `+∞` if the goal is unreachable,
    /// `None` when no exact planner was run.
    pub optimal: Option<f64>,
    pub outcomes: Vec<(Planner, PlannerOutcome)>,
}

impl RunRecord {
    pub fn outcome(&self, planner: Planner) -> Option<&PlannerOutcome> {
        self.outcomes.iter().find(|(p, _)| *p == planner).map(|(_, o)| o)
    }

    pub fn reachable(&self) -> Option<bool> {
        self.optimal.map(f64::is_finite)
    }
}

fn fmt_length(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.9}")
    } else {
        "inf".to_string()
    }
}

/// Writes a header plus one row per record. All records must list the same
/// planners in the same order.
pub fn write_records<W: Write>(out: W, records: &[RunRecord]) -> Result<(), BenchError> {
    let mut w = csv::Writer::from_writer(out);
    let planners: Vec<Planner> = records
        .first()
        .map(|r| r.outcomes.iter().map(|(p, _)| *p).collect())
        .unwrap_or_default();
    let mut header: Vec<String> = FIXED.iter().map(|s| s.to_string()).collect();
    for p in &planners {
        header.extend(PER_PLANNER.iter().map(|f| format!("{p}_{f}")));
    }
    w.write_record(&header)?;
    for r in records {
        let got: Vec<Planner> = r.outcomes.iter().map(|(p, _)| *p).collect();
        if got != planners {
            return Err(BenchError::Table(format!("row {} has a different planner set", r.run)));
        }
        let mut row = vec![
            SCHEMA_VERSION.to_string(),
            r.map_id.clone(),
            r.group.clone(),
            r.run.to_string(),
            r.start.i.to_string(),
            r.start.j.to_string(),
            r.goal.i.to_string(),
            r.goal.j.to_string(),
            r.arithmetic.as_str().to_string(),
            r.corner_rule.as_str().to_string(),
            r.optimal.map(fmt_length).unwrap_or_default(),
        ];
        for (_, o) in &r.outcomes {
            row.extend([
                fmt_length(o.length),
                o.orthogonal.to_string(),
                o.diagonal.to_string(),
                o.expansions.to_string(),
                o.fail.to_string(),
                o.timed_out.to_string(),
                format!("{:.6}", o.time_s),
            ]);
        }
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_records<R: Read>(input: R) -> Result<Vec<RunRecord>, BenchError> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr.headers()?.clone();
    let col: HashMap<&str, usize> = header.iter().enumerate().map(|(k, h)| (h, k)).collect();
    for name in FIXED {
        if !col.contains_key(name) {
            return Err(BenchError::Table(format!("missing column `{name}`")));
        }
    }
    let planners: Vec<Planner> = Planner::ALL
        .into_iter()
        .filter(|p| col.contains_key(format!("{p}_length").as_str()))
        .collect();
    for p in &planners {
        for f in PER_PLANNER {
            if !col.contains_key(format!("{p}_{f}").as_str()) {
                return Err(BenchError::Table(format!("missing column `{p}_{f}`")));
            }
        }
    }

    let mut records = Vec::new();
    for (n, row) in rdr.records().enumerate() {
        let row = row?;
        let line = n + 2;
        let get = |name: &str| row.get(col[name]).unwrap_or("");
        fn parse<T: std::str::FromStr>(line: usize, name: &str, v: &str) -> Result<T, BenchError> {
            v.parse()
                .map_err(|_| BenchError::Table(format!("line {line}: bad `{name}` value `{v}`")))
        }
        let field = |name: &str| -> Result<String, BenchError> { Ok(get(name).to_string()) };
        let version: u32 = parse(line, "schema_version", get("schema_version"))?;
        if version != SCHEMA_VERSION {
            return Err(BenchError::Table(format!(
                "line {line}: schema version {version}, expected {SCHEMA_VERSION}"
            )));
        }
        let optimal = match get("optimal_length") {
            "" => None,
            v => Some(parse::<f64>(line, "optimal_length", v)?),
        };
        let mut outcomes = Vec::with_capacity(planners.len());
        for &p in &planners {
            let name = |f: &str| format!("{p}_{f}");
            let v = |f: &str| get(&name(f)).to_string();
            outcomes.push((
                p,
                PlannerOutcome {
                    length: parse(line, &name("length"), &v("length"))?,
                    orthogonal: parse(line, &name("orthogonal"), &v("orthogonal"))?,
                    diagonal: parse(line, &name("diagonal"), &v("diagonal"))?,
                    expansions: parse(line, &name("expansions"), &v("expansions"))?,
                    fail: parse(line, &name("fail"), &v("fail"))?,
                    timed_out: parse(line, &name("timed_out"), &v("timed_out"))?,
                    time_s: parse(line, &name("time_s"), &v("time_s"))?,
                },
            ));
        }
        records.push(RunRecord {
            map_id: field("map_id")?,
            group: field("group")?,
            run: parse(line, "run", get("run"))?,
            start: Cell::new(parse(line, "start_i", get("start_i"))?, parse(line, "start_j", get("start_j"))?),
            goal: Cell::new(parse(line, "goal_i", get("goal_i"))?, parse(line, "goal_j", get("goal_j"))?),
            arithmetic: get("arithmetic").parse().map_err(BenchError::Table)?,
            corner_rule: get("corner_rule").parse().map_err(BenchError::Table)?,
            optimal,
            outcomes,
        });
    }
    Ok(records)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn outcome(length: f64, time_s: f64) -> PlannerOutcome {
        PlannerOutcome {
            length,
            orthogonal: 0,
            diagonal: 0,
            expansions: 10,
            fail: !length.is_finite(),
            timed_out: false,
            time_s,
        }
    }

    pub(crate) fn record(group: &str, run: usize, optimal: f64, outcomes: Vec<(Planner, PlannerOutcome)>) -> RunRecord {
        RunRecord {
            map_id: format!("{group}-map"),
            group: group.to_string(),
            run,
            start: Cell::new(0, 0),
            goal: Cell::new(3, 4),
            arithmetic: Arithmetic::Float,
            corner_rule: CornerRule::CutAllowed,
            optimal: Some(optimal),
            outcomes,
        }
    }

    #[test]
    fn round_trips_through_csv() {
        let records = vec![
            record("a", 0, 5.0 + 2f64.sqrt(), vec![
                (Planner::Era, outcome(7.0, 0.000123)),
                (Planner::Dijkstra, outcome(5.0 + 2f64.sqrt(), 0.5)),
            ]),
            record("b", 1, f64::INFINITY, vec![
                (Planner::Era, outcome(f64::INFINITY, 0.25)),
                (Planner::Dijkstra, outcome(f64::INFINITY, 1.0)),
            ]),
        ];
        let mut buf = Vec::new();
        write_records(&mut buf, &records).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert!(text.starts_with("schema_version,map_id,group,run,"));
        assert!(text.contains("6.414213562"));
        assert!(text.contains(",inf,"));
        let back = read_records(&buf[..]).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[1].optimal, Some(f64::INFINITY));
        assert_eq!(back[0].outcome(Planner::Era).unwrap().time_s, 0.000123);
        assert!((back[0].optimal.unwrap() - records[0].optimal.unwrap()).abs() < 1e-9);
        assert!(back[0].outcome(Planner::RaWot).is_none());
    }

    #[test]
    fn reader_ignores_column_order() {
        let text = "group,map_id,schema_version,run,start_j,start_i,goal_i,goal_j,corner_rule,arithmetic,optimal_length,era_time_s,era_length,era_orthogonal,era_diagonal,era_expansions,era_fail,era_timed_out\n\
                    g,m,1,3,2,1,4,5,cut-forbidden,lattice,,0.5,4.000000000,4,0,7,false,false\n";
        let r = &read_records(text.as_bytes()).unwrap()[0];
        assert_eq!(r.start, Cell::new(1, 2));
        assert_eq!(r.corner_rule, CornerRule::CutForbidden);
        assert_eq!(r.arithmetic, Arithmetic::Lattice);
        assert_eq!(r.optimal, None);
        assert_eq!(r.outcome(Planner::Era).unwrap().expansions, 7);
    }

    #[test]
    fn rejects_missing_columns_and_versions() {
        assert!(matches!(read_records("map_id,group\nx,y\n".as_bytes()), Err(BenchError::Table(_))));
        let text = "schema_version,map_id,group,run,start_i,start_j,goal_i,goal_j,arithmetic,corner_rule,optimal_length\n9,m,g,0,0,0,1,1,float,cut-allowed,1\n";
        assert!(matches!(read_records(text.as_bytes()), Err(BenchError::Table(_))));
    }
}
