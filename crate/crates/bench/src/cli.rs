//! The `erastar` command line.
//!
//! Exit status: 0 on success, 1 on runtime errors, 2 on usage errors.

use std::ffi::OsString;
use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use erastar_core::{
    generate_maze, generate_random_map, Arithmetic, Cell, CornerRule, Cost, GridMap, Lattice,
    MazeSpec, PenaltyTables, Planner, RandomMapSpec, SearchOptions, TieBreak,
};

use crate::manifest::{load_manifest, parse_gen, MapSource};
use crate::plot::emit_plots;
use crate::record::{read_records, write_records};
use crate::runner::{run_benchmark, BenchConfig};
use crate::summary::summarize;

/// Overrides `--out-dir` for every subcommand that writes files.
pub const OUT_DIR_ENV: &str = "ERASTAR_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "erastar", version, about = "Grid pathfinding with ERA* and baselines")]
#[command(arg_required_else_help = true)]
struct Cli {
    /// Print the 28 penalty matrices and exit.
    #[arg(long)]
    dump_tables: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a random-rectangle or maze map in MovingAI format.
    GenMap(GenMapArgs),
    /// Solve one query and print length, time and expansions.
    Solve(SolveArgs),
    /// Run the benchmark and write runs.csv.
    Bench(BenchArgs),
    /// Aggregate runs.csv into summary tables.
    Summarize(TableArgs),
    /// Render SVG figures from runs.csv.
    Plot(TableArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MapKindArg {
    Random,
    Maze,
}

#[derive(Debug, Args)]
struct GenMapArgs {
    #[arg(long, value_enum, default_value = "random")]
    kind: MapKindArg,
    #[arg(long)]
    width: usize,
    #[arg(long)]
    height: usize,
    #[arg(long, default_value_t = 0.2)]
    ratio: f64,
    #[arg(long, default_value_t = 2)]
    rect_min: usize,
    #[arg(long, default_value_t = 10)]
    rect_max: usize,
    #[arg(long, default_value_t = 1)]
    corridor: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SearchFlags {
    #[arg(long, default_value = "float", value_parser = parse_from_str::<Arithmetic>)]
    arithmetic: Arithmetic,
    #[arg(long, default_value = "cut-allowed", value_parser = parse_from_str::<CornerRule>)]
    corner_rule: CornerRule,
    #[arg(long, default_value = "fifo", value_parser = parse_from_str::<TieBreak>)]
    tie_break: TieBreak,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[arg(long, conflicts_with = "gen", required_unless_present = "gen")]
    map: Option<PathBuf>,
    /// Generator spec, e.g. "random width=100 height=100 ratio=0.2 rect_min=2 rect_max=10 seed=1".
    #[arg(long)]
    gen: Option<String>,
    #[arg(long, default_value = "era", value_parser = parse_from_str::<Planner>)]
    algo: Planner,
    /// Start cell as `row,col`.
    #[arg(long, value_parser = parse_from_str::<Cell>)]
    start: Cell,
    #[arg(long, value_parser = parse_from_str::<Cell>)]
    goal: Cell,
    #[command(flatten)]
    search: SearchFlags,
    /// Also print the path, one `row,col` per line.
    #[arg(long)]
    dump_path: bool,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// MovingAI map file (repeatable).
    #[arg(long)]
    map: Vec<PathBuf>,
    /// Generator spec (repeatable).
    #[arg(long)]
    gen: Vec<String>,
    /// Group name for --map and --gen entries.
    #[arg(long, default_value = "cli")]
    group: String,
    #[arg(long, default_value_t = 30)]
    runs: usize,
    #[arg(long, value_delimiter = ',', default_value = "era,ra_wot,astar_t", value_parser = parse_from_str::<Planner>)]
    planners: Vec<Planner>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    search: SearchFlags,
    #[arg(long, default_value_t = 3)]
    repetitions: usize,
    /// Per-run time cap in seconds; 0 disables it.
    #[arg(long, default_value_t = 60.0)]
    time_cap: f64,
    /// Worker threads; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    #[arg(long, env = OUT_DIR_ENV, default_value = "bench-out")]
    out_dir: PathBuf,
}

#[derive(Debug, Args)]
struct TableArgs {
    /// A runs.csv produced by `bench`.
    runs: PathBuf,
    /// Defaults to the directory holding the run table.
    #[arg(long, env = OUT_DIR_ENV)]
    out_dir: Option<PathBuf>,
}

fn parse_from_str<T: std::str::FromStr<Err = String>>(s: &str) -> Result<T, String> {
    s.parse()
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit status.
pub fn main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if cli.dump_tables {
        let tables = PenaltyTables::<f64>::build()?;
        write!(out, "{}", tables.dump())?;
        return Ok(());
    }
    match cli.command {
        None => Ok(()),
        Some(Command::GenMap(a)) => gen_map(a, &mut out),
        Some(Command::Solve(a)) => match a.search.arithmetic {
            Arithmetic::Float => solve::<f64>(a, &mut out),
            Arithmetic::Lattice => solve::<Lattice>(a, &mut out),
        },
        Some(Command::Bench(a)) => bench(a, &mut out),
        Some(Command::Summarize(a)) => {
            let (records, dir) = load_runs(&a)?;
            let summary = summarize(&records)?;
            std::fs::create_dir_all(&dir)?;
            summary.write_csv(BufWriter::new(File::create(dir.join("summary.csv"))?))?;
            let text = summary.to_text();
            std::fs::write(dir.join("summary.txt"), &text)?;
            write!(out, "{text}")?;
            Ok(())
        }
        Some(Command::Plot(a)) => {
            let (records, dir) = load_runs(&a)?;
            for path in emit_plots(&records, &dir)? {
                writeln!(out, "{}", path.display())?;
            }
            Ok(())
        }
    }
}

fn gen_map(a: GenMapArgs, out: &mut impl Write) -> Result<()> {
    let map = match a.kind {
        MapKindArg::Random => generate_random_map(&RandomMapSpec {
            width: a.width,
            height: a.height,
            obstacle_ratio: a.ratio,
            rect_min: a.rect_min,
            rect_max: a.rect_max,
            seed: a.seed,
        })?,
        MapKindArg::Maze => generate_maze(&MazeSpec {
            width: a.width,
            height: a.height,
            corridor: a.corridor,
            seed: a.seed,
        })?,
    };
    let text = map.to_movingai_string();
    match a.out {
        Some(path) => std::fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

fn load_map(map: Option<&Path>, gen: Option<&str>) -> Result<GridMap> {
    let source = match (map, gen) {
        (Some(path), _) => MapSource::file("cli", path.to_path_buf()),
        (None, Some(spec)) => parse_gen(spec, "cli").map_err(anyhow::Error::msg)?,
        (None, None) => bail!("either --map or --gen is required"),
    };
    Ok(source.load()?)
}

fn solve<C: Cost>(a: SolveArgs, out: &mut impl Write) -> Result<()> {
    let map = load_map(a.map.as_deref(), a.gen.as_deref())?.with_corner_rule(a.search.corner_rule);
    let tables = PenaltyTables::<C>::build()?;
    let options = SearchOptions {
        max_nb_iter: None,
        tie_break: a.search.tie_break,
    };
    let t0 = Instant::now();
    let result = a.algo.run(&map, &tables, a.start, a.goal, options)?;
    let elapsed = t0.elapsed().as_secs_f64();
    if result.fail {
        writeln!(out, "length: inf")?;
    } else {
        writeln!(out, "length: {:.9}", result.length)?;
    }
    writeln!(out, "time_s: {elapsed:.6}")?;
    writeln!(out, "expansions: {}", result.expansions)?;
    writeln!(out, "fail: {}", result.fail)?;
    if a.dump_path {
        for c in &result.path {
            writeln!(out, "{},{}", c.i, c.j)?;
        }
    }
    Ok(())
}

fn bench(a: BenchArgs, out: &mut impl Write) -> Result<()> {
    let mut sources = match &a.manifest {
        Some(path) => load_manifest(path)?,
        None => Vec::new(),
    };
    sources.extend(a.map.iter().map(|p| MapSource::file(&a.group, p.clone())));
    for spec in &a.gen {
        sources.push(parse_gen(spec, &a.group).map_err(anyhow::Error::msg)?);
    }
    if sources.is_empty() {
        bail!("no maps: pass --manifest, --map or --gen");
    }
    if !(a.time_cap >= 0.0 && a.time_cap.is_finite()) {
        bail!("--time-cap must be a non-negative number of seconds");
    }
    let cfg = BenchConfig {
        sources,
        runs_per_map: a.runs,
        planners: a.planners,
        seed: a.seed,
        arithmetic: a.search.arithmetic,
        corner_rule: a.search.corner_rule,
        tie_break: a.search.tie_break,
        repetitions: a.repetitions,
        time_cap: (a.time_cap > 0.0).then(|| Duration::from_secs_f64(a.time_cap)),
        jobs: a.jobs,
    };
    let output = run_benchmark(&cfg)?;
    for (id, reason) in &output.skipped {
        eprintln!("skipped {id}: {reason}");
    }
    if output.records.is_empty() {
        bail!("no runs were produced");
    }
    std::fs::create_dir_all(&a.out_dir)?;
    let path = a.out_dir.join("runs.csv");
    let file = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
    write_records(BufWriter::new(file), &output.records)?;
    writeln!(out, "{} runs written to {}", output.records.len(), path.display())?;
    Ok(())
}

fn load_runs(a: &TableArgs) -> Result<(Vec<crate::RunRecord>, PathBuf)> {
    let file = File::open(&a.runs).with_context(|| format!("opening {}", a.runs.display()))?;
    let records = read_records(BufReader::new(file))?;
    let dir = a.out_dir.clone().unwrap_or_else(|| {
        a.runs.parent().map(Path::to_path_buf).unwrap_or_default()
    });
    Ok((records, dir))
}
