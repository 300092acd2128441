use std::io::{Read, Write};
use std::time::{Duration, SystemTime, UNIX_EPOCH};

use nonavg_core::geometry::PointSet;
use nonavg_core::{Budgets, IntSet};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] nonavg_core::Error),
    #[error("{0}")]
    Input(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use nonavg_core::Error as E;
        match self {
            CliError::Core(E::Budget { .. } | E::Overflow(_) | E::Exhausted(_)) => 3,
            _ => 2,
        }
    }

    pub fn kind(&self) -> &'static str {
        use nonavg_core::Error as E;
        match self {
            CliError::Core(E::Budget { .. }) => "budget",
            CliError::Core(E::Overflow(_)) => "overflow",
            CliError::Core(E::Exhausted(_)) => "exhausted",
            CliError::Core(_) | CliError::Input(_) => "input",
            CliError::Io { .. } => "io",
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

pub fn input_error(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

pub fn read_text(path: &str) -> CliResult<String> {
    let io = |source| CliError::Io {
        path: path.to_string(),
        source,
    };
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

pub fn read_json<T: DeserializeOwned>(path: &str) -> CliResult<T> {
    serde_json::from_str(&read_text(path)?).map_err(|e| input_error(format!("{path}: {e}")))
}

/// Accepts an IntSet object or a bare array of integers or points.
pub fn read_int_set(path: &str) -> CliResult<IntSet> {
    let value: Value = read_json(path)?;
    let bad = |e: serde_json::Error| input_error(format!("{path}: {e}"));
    match value {
        Value::Object(_) => serde_json::from_value(value).map_err(bad),
        Value::Array(ref items) if items.iter().all(Value::is_i64) => {
            let ints: Vec<i64> = serde_json::from_value(value).map_err(bad)?;
            Ok(IntSet::from_ints(ints)?)
        }
        Value::Array(_) => {
            let points: Vec<Vec<i64>> = serde_json::from_value(value).map_err(bad)?;
            let dim = points.first().map_or(1, Vec::len);
            Ok(IntSet::new(dim, points)?)
        }
        _ => Err(input_error(format!("{path}: expected a point set"))),
    }
}

/// Accepts the point-set schema (with optional rational coordinates) or any
/// form [`read_int_set`] understands.
pub fn read_point_set(path: &str) -> CliResult<PointSet> {
    let value: Value = read_json(path)?;
    if value.is_object() {
        return serde_json::from_value(value).map_err(|e| input_error(format!("{path}: {e}")));
    }
    Ok(PointSet::from(&read_int_set(path)?))
}

pub enum Payload {
    Json(String),
    Csv(String),
}

impl Payload {
    pub fn json<T: Serialize>(value: &T) -> Self {
        Payload::Json(serde_json::to_string(value).expect("report types serialize"))
    }

    fn text(&self) -> String {
        match self {
            Payload::Json(s) => format!("{s}\n"),
            Payload::Csv(s) => s.clone(),
        }
    }
}

/// What a subcommand produced: the payload, whether the checked property
/// held, and provenance for the manifest.
pub struct Outcome {
    pub payload: Payload,
    pub holds: bool,
    pub seed: Option<u64>,
}

impl Outcome {
    pub fn ok(payload: Payload) -> Self {
        Outcome {
            payload,
            holds: true,
            seed: None,
        }
    }

    pub fn verdict(payload: Payload, holds: bool) -> Self {
        Outcome {
            payload,
            holds,
            seed: None,
        }
    }

    pub fn seeded(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: Vec<String>,
    pub config: Budgets,
    pub seed: Option<u64>,
    pub versions: Versions,
    pub started_unix: u64,
    pub wall_time_ms: u128,
    pub budgets_hit: Vec<String>,
    pub output: String,
}

#[derive(Debug, Serialize)]
pub struct Versions {
    pub nonavg: &'static str,
    pub nonavg_core: &'static str,
}

impl RunManifest {
    pub fn new(
        command: Vec<String>,
        config: Budgets,
        started: SystemTime,
        elapsed: Duration,
        output: &str,
    ) -> Self {
        RunManifest {
            command,
            config,
            seed: None,
            versions: Versions {
                nonavg: env!("CARGO_PKG_VERSION"),
                nonavg_core: nonavg_core::VERSION,
            },
            started_unix: started
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
            wall_time_ms: elapsed.as_millis(),
            budgets_hit: Vec::new(),
            output: output.to_string(),
        }
    }
}

pub fn manifest_path(output: &str) -> String {
    format!("{output}.manifest.json")
}

pub fn write_manifest(manifest: &RunManifest) -> CliResult<()> {
    let path = manifest_path(&manifest.output);
    let text = serde_json::to_string_pretty(manifest).expect("manifest serializes") + "\n";
    std::fs::write(&path, text).map_err(|source| CliError::Io { path, source })
}

pub fn write_payload(output: &str, payload: &Payload) -> CliResult<()> {
    let text = payload.text();
    if output == "-" {
        let mut out = std::io::stdout().lock();
        out.write_all(text.as_bytes())
            .and_then(|_| out.flush())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            })
    } else {
        std::fs::write(output, text).map_err(|source| CliError::Io {
            path: output.to_string(),
            source,
        })
    }
}
