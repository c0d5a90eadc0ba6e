//! Corpus manifests.
//!
//! One directive per line, `#` starts a comment:
//!
//! ```text
//! group <name>
//! map <path>
//! gen random width=100 height=100 ratio=0.2 rect_min=2 rect_max=10 seed=42
//! gen maze width=512 height=512 corridor=4 seed=1
//! ```
//!
//! `map` and `gen` entries belong to the most recent `group` (or `default`).
//! Relative map paths are resolved against the manifest's directory.

use std::collections::HashMap;
use std::path::{Path, PathBuf};

use erastar_core::{generate_maze, generate_random_map, parse_movingai_map, GridMap, MazeSpec, RandomMapSpec};

use crate::BenchError;

#[derive(Debug, Clone, PartialEq)]
pub enum MapKind {
    File(PathBuf),
    Random(RandomMapSpec),
    Maze(MazeSpec),
}

#[derive(Debug, Clone, PartialEq)]
pub struct MapSource {
    pub id: String,
    pub group: String,
    pub kind: MapKind,
}

impl MapSource {
    pub fn random(group: &str, spec: RandomMapSpec) -> Self {
        MapSource {
            id: format!(
                "random-{}x{}-r{}-s{}",
                spec.width, spec.height, spec.obstacle_ratio, spec.seed
            ),
            group: group.to_string(),
            kind: MapKind::Random(spec),
        }
    }

    pub fn maze(group: &str, spec: MazeSpec) -> Self {
        MapSource {
            id: format!("maze-{}x{}-c{}-s{}", spec.width, spec.height, spec.corridor, spec.seed),
            group: group.to_string(),
            kind: MapKind::Maze(spec),
        }
    }

    pub fn file(group: &str, path: PathBuf) -> Self {
        let id = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        MapSource {
            id,
            group: group.to_string(),
            kind: MapKind::File(path),
        }
    }

    /// Loads or generates the occupancy grid.
    pub fn load(&self) -> Result<GridMap, BenchError> {
        match &self.kind {
            MapKind::File(path) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| BenchError::Io(format!("{}: {e}", path.display())))?;
                Ok(parse_movingai_map(&text)?)
            }
            MapKind::Random(spec) => Ok(generate_random_map(spec)?),
            MapKind::Maze(spec) => Ok(generate_maze(spec)?),
        }
    }
}

pub fn parse_manifest(text: &str, base_dir: &Path) -> Result<Vec<MapSource>, BenchError> {
    let mut group = "default".to_string();
    let mut sources = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| BenchError::Manifest { line: n + 1, msg };
        let (directive, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match directive {
            "group" if !rest.is_empty() => group = rest.to_string(),
            "map" if !rest.is_empty() => {
                let path = Path::new(rest);
                let path = if path.is_absolute() { path.to_path_buf() } else { base_dir.join(path) };
                sources.push(MapSource::file(&group, path));
            }
            "gen" => sources.push(parse_gen(rest, &group).map_err(err)?),
            other => return Err(err(format!("unrecognised directive `{other}`"))),
        }
    }
    Ok(sources)
}

pub fn load_manifest(path: &Path) -> Result<Vec<MapSource>, BenchError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| BenchError::Io(format!("{}: {e}", path.display())))?;
    parse_manifest(&text, path.parent().unwrap_or(Path::new(".")))
}

/// Parses the arguments of a `gen` line (also accepted by `bench --gen`).
pub fn parse_gen(spec: &str, group: &str) -> Result<MapSource, String> {
    let mut words = spec.split_whitespace();
    let kind = words.next().ok_or("`gen` needs a generator name")?;
    let mut params = HashMap::new();
    for word in words {
        let (k, v) = word
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got `{word}`"))?;
        params.insert(k, v);
    }
    let mut take = |key: &str| -> Result<&str, String> {
        params.remove(key).ok_or_else(|| format!("missing `{key}`"))
    };
    fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, String> {
        v.parse().map_err(|_| format!("bad value for `{key}`: `{v}`"))
    }
    let source = match kind {
        "random" => MapSource::random(
            group,
            RandomMapSpec {
                width: num("width", take("width")?)?,
                height: num("height", take("height")?)?,
                obstacle_ratio: num("ratio", take("ratio")?)?,
                rect_min: num("rect_min", take("rect_min")?)?,
                rect_max: num("rect_max", take("rect_max")?)?,
                seed: num("seed", take("seed")?)?,
            },
        ),
        "maze" => MapSource::maze(
            group,
            MazeSpec {
                width: num("width", take("width")?)?,
                height: num("height", take("height")?)?,
                corridor: num("corridor", take("corridor")?)?,
                seed: num("seed", take("seed")?)?,
            },
        ),
        other => return Err(format!("unknown generator `{other}` (expected random or maze)")),
    };
    if let Some(extra) = params.keys().next() {
        return Err(format!("unexpected parameter `{extra}`"));
    }
    Ok(source)
}

/// The desk-scale corpus: 30 random 100×100 maps with rectangles of side
/// 2–10, obstacle ratio cycling through 0.1, 0.2 and 0.3, seeds 0–29.
pub fn desk_scale_corpus() -> Vec<MapSource> {
    (0..30u64)
        .map(|seed| {
            MapSource::random(
                "100x100",
                RandomMapSpec {
                    width: 100,
                    height: 100,
                    obstacle_ratio: [0.1, 0.2, 0.3][seed as usize % 3],
                    rect_min: 2,
                    rect_max: 10,
                    seed,
                },
            )
        })
        .collect()
}
