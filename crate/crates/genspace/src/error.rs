use std::path::PathBuf;

use thiserror::Error;

/// All failure modes across the pipeline. `exit_code` maps each to the CLI
/// exit-code contract: 1 config, 2 data, 3 numerical.
#[derive(Debug, Error)]
pub enum Error {
    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error in {file}:{line}: {message}")]
    Parse {
        file: String,
        line: usize,
        message: String,
    },

    #[error("unknown symbol '{symbol}' in {file} at row {row}, col {col}")]
    UnknownSymbol {
        symbol: char,
        file: String,
        row: usize,
        col: usize,
    },

    #[error("level size mismatch: expected {expected_h}x{expected_w}, offending: {}", offenders.join(", "))]
    SizeMismatch {
        expected_h: usize,
        expected_w: usize,
        offenders: Vec<String>,
    },

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("set '{set}' has only {available} levels, {quota} requested")]
    InsufficientLevels {
        set: String,
        quota: usize,
        available: usize,
    },

    #[error("empty corpus")]
    EmptyCorpus,

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("{algorithm}: input matrix has rank < 2 (corpus too uniform)")]
    DegenerateRank { algorithm: &'static str },

    #[error("perplexity calibration failed for row {row}: {message}")]
    Calibration { row: usize, message: String },

    #[error("{algorithm}: numerical failure at iteration {iteration}: {message}")]
    Numerical {
        algorithm: &'static str,
        iteration: usize,
        message: String,
    },

    #[error("behavioral characteristic '{bc}' unsupported: {reason}")]
    UnsupportedBc { bc: String, reason: String },

    #[error("behavioral characteristic '{bc}' missing for level '{level_id}'")]
    MissingBc { bc: String, level_id: String },

    #[error("undefined correlation: zero variance in a rank vector")]
    UndefinedCorrelation,

    #[error("no color assigned to role '{role}'")]
    MissingRoleColor { role: String },
}

impl Error {
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 1,
            Error::DegenerateRank { .. }
            | Error::Calibration { .. }
            | Error::Numerical { .. }
            | Error::UndefinedCorrelation => 3,
            _ => 2,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
