//! Batch runs of one driver over a list of seeds, written as CSV.
//!
//! ```toml
//! driver = "pmain"
//! seeds = [1, 2, 3]
//! output = "pmain.csv"
//!
//! [pattern]
//! kind = "disjoint-triangles"
//! k = 2
//!
//! [host]
//! kind = "gnp"
//! n = 60
//! p = 0.8
//! ```
//!
//! A `gnp` host is drawn with the row's seed. Relative file paths resolve
//! against the spec file's directory.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::Deserialize;
use thiserror::Error;

use crate::generate::{self, GenError};
use crate::graph::{parse_edge_list, Graph, ParseError};
use crate::pipeline::{run_driver, DriverError, HeartConfig, Theorem};
use crate::rational;

pub const THREADS_ENV: &str = "MINORFORGE_THREADS";

pub const COLUMNS: [&str; 9] = [
    "driver",
    "t",
    "q",
    "threshold",
    "host-n",
    "host-avg-deg",
    "outcome",
    "wall-ms",
    "seed",
];

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum PatternSource {
    File { path: PathBuf },
    DisjointTriangles { k: usize },
    Cycle { t: usize },
    Complete { t: usize },
    Grid { rows: usize, cols: usize },
    RandomDRegular { t: usize, d: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum HostSource {
    File { path: PathBuf },
    Gnp { n: usize, p: f64 },
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub driver: String,
    pub pattern: PatternSource,
    pub host: HostSource,
    pub seeds: Vec<u64>,
    pub output: PathBuf,
    /// Decimal or fraction overriding the heart procedure's `λ`.
    pub lambda: Option<String>,
    /// Decimal or fraction overriding the heart procedure's `ε`.
    pub epsilon: Option<String>,
}

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("{path}: {source}")]
    Toml {
        path: String,
        source: toml::de::Error,
    },
    #[error("{0}")]
    Invalid(String),
    #[error("{path}: {source}")]
    Graph { path: String, source: ParseError },
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// One CSV row. Everything except `wall_ms` is a function of the spec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub driver: Theorem,
    pub t: usize,
    pub q: usize,
    pub threshold: String,
    pub host_n: usize,
    pub host_avg_deg: String,
    pub outcome: String,
    pub wall_ms: u128,
    pub seed: u64,
}

impl Row {
    fn cells(&self) -> [String; 9] {
        [
            self.driver.to_string(),
            self.t.to_string(),
            self.q.to_string(),
            self.threshold.clone(),
            self.host_n.to_string(),
            self.host_avg_deg.clone(),
            self.outcome.clone(),
            self.wall_ms.to_string(),
            self.seed.to_string(),
        ]
    }
}

fn read_graph(base: &Path, path: &Path) -> Result<Graph, ExperimentError> {
    let full = base.join(path);
    let text = std::fs::read_to_string(&full).map_err(|source| ExperimentError::Io {
        path: full.display().to_string(),
        source,
    })?;
    parse_edge_list(&text).map_err(|source| ExperimentError::Graph {
        path: full.display().to_string(),
        source,
    })
}

impl ExperimentSpec {
    pub fn parse(text: &str, origin: &str) -> Result<Self, ExperimentError> {
        let spec: ExperimentSpec =
            toml::from_str(text).map_err(|source| ExperimentError::Toml {
                path: origin.to_string(),
                source,
            })?;
        spec.driver()?;
        spec.heart_config()?;
        if spec.seeds.is_empty() {
            return Err(ExperimentError::Invalid(
                "`seeds` must list at least one seed".into(),
            ));
        }
        Ok(spec)
    }

    pub fn load(path: &Path) -> Result<(Self, PathBuf), ExperimentError> {
        let text = std::fs::read_to_string(path).map_err(|source| ExperimentError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let spec = Self::parse(&text, &path.display().to_string())?;
        let base = path.parent().map(Path::to_path_buf).unwrap_or_default();
        Ok((spec, base))
    }

    pub fn driver(&self) -> Result<Theorem, ExperimentError> {
        self.driver.parse().map_err(ExperimentError::Invalid)
    }

    pub fn heart_config(&self) -> Result<HeartConfig, ExperimentError> {
        let mut config = HeartConfig::default();
        let parse = |field: &str, s: &str| {
            rational::parse_fraction_or_decimal(s)
                .map_err(|e| ExperimentError::Invalid(format!("`{field}`: {e}")))
        };
        if let Some(l) = &self.lambda {
            config.lambda = parse("lambda", l)?;
        }
        if let Some(e) = &self.epsilon {
            config.epsilon = parse("epsilon", e)?;
        }
        Ok(config)
    }

    pub fn pattern_graph(&self, base: &Path) -> Result<Graph, ExperimentError> {
        Ok(match &self.pattern {
            PatternSource::File { path } => read_graph(base, path)?,
            PatternSource::DisjointTriangles { k } => generate::disjoint_triangles(*k),
            PatternSource::Cycle { t } => generate::from_spec(&format!("cycle:{t}"))?,
            PatternSource::Complete { t } => generate::complete(*t),
            PatternSource::Grid { rows, cols } => generate::grid(*rows, *cols),
            PatternSource::RandomDRegular { t, d, seed } => {
                generate::random_regular(*t, *d, *seed)?
            }
        })
    }

    pub fn host_graph(&self, base: &Path, seed: u64) -> Result<Graph, ExperimentError> {
        Ok(match &self.host {
            HostSource::File { path } => read_graph(base, path)?,
            HostSource::Gnp { n, p } => generate::gnp(*n, *p, seed)?,
            HostSource::Complete { n } => generate::complete(*n),
            HostSource::CompleteBipartite { a, b } => generate::complete_bipartite(*a, *b),
        })
    }
}

/// Worker count from `MINORFORGE_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var(THREADS_ENV)
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
}

fn run_one(
    spec: &ExperimentSpec,
    base: &Path,
    h: &Graph,
    seed: u64,
) -> Result<Row, ExperimentError> {
    let driver = spec.driver()?;
    let config = spec.heart_config()?;
    let g = spec.host_graph(base, seed)?;
    let start = Instant::now();
    let result = run_driver(driver, &g, h, seed, &config);
    let wall_ms = start.elapsed().as_millis();
    let (threshold, outcome) = match result {
        Ok(r) => (
            rational::format(r.hypothesis.threshold),
            r.outcome.tag().to_string(),
        ),
        Err(DriverError::Rejected(_)) => ("-".into(), "rejected".into()),
        Err(DriverError::Internal(_)) => ("-".into(), "internal-error".into()),
    };
    Ok(Row {
        driver,
        t: h.n(),
        q: h.m(),
        threshold,
        host_n: g.n(),
        host_avg_deg: g
            .average_degree()
            .map(rational::format)
            .unwrap_or_else(|_| "-".into()),
        outcome,
        wall_ms,
        seed,
    })
}

/// Runs every seed, in parallel up to `MINORFORGE_THREADS` workers. Rows come
/// back in seed-list order.
pub fn run(spec: &ExperimentSpec, base: &Path) -> Result<Vec<Row>, ExperimentError> {
    let h = spec.pattern_graph(base)?;
    let work = || {
        spec.seeds
            .par_iter()
            .map(|&s| run_one(spec, base, &h, s))
            .collect::<Result<Vec<_>, _>>()
    };
    match thread_cap() {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| ExperimentError::Invalid(e.to_string()))?
            .install(work),
        None => work(),
    }
}

pub fn to_csv(rows: &[Row]) -> Result<String, ExperimentError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(COLUMNS)?;
    for r in rows {
        w.write_record(r.cells())?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| ExperimentError::Invalid(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| ExperimentError::Invalid(e.to_string()))
}

/// Runs the spec and writes its CSV to `output` (relative to `base`).
pub fn run_to_file(
    spec: &ExperimentSpec,
    base: &Path,
) -> Result<(PathBuf, Vec<Row>), ExperimentError> {
    let rows = run(spec, base)?;
    let out = base.join(&spec.output);
    std::fs::write(&out, to_csv(&rows)?).map_err(|source| ExperimentError::Io {
        path: out.display().to_string(),
        source,
    })?;
    Ok((out, rows))
}
