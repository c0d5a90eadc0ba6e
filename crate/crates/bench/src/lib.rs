//! Benchmark harness for the `erastar-core` planners: corpus manifests, a
//! timed runner writing one CSV row per query, summary tables and SVG plots.

pub mod cli;
pub mod manifest;
pub mod plot;
pub mod record;
pub mod runner;
pub mod summary;
mod svg;

use thiserror::Error;

pub use manifest::{desk_scale_corpus, load_manifest, parse_manifest, MapKind, MapSource};
pub use record::{read_records, write_records, PlannerOutcome, RunRecord, SCHEMA_VERSION};
pub use runner::{run_benchmark, BenchConfig, BenchOutput};
pub use summary::{summarize, Summary};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("manifest line {line}: {msg}")]
    Manifest { line: usize, msg: String },
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Grid(#[from] erastar_core::GridError),
    #[error(transparent)]
    Search(#[from] erastar_core::SearchError),
    #[error("malformed run table: {0}")]
    Table(String),
    #[error("no runs to summarise")]
    EmptyInput,
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl From<csv::Error> for BenchError {
    fn from(e: csv::Error) -> Self {
        BenchError::Table(e.to_string())
    }
}

impl From<std::io::Error> for BenchError {
    fn from(e: std::io::Error) -> Self {
        BenchError::Io(e.to_string())
    }
}
