use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("weight {0} is not dominant")]
    NotDominant(String),

    #[error("unknown root system type {0:?} (expected A1, A2, A3, optionally with a trailing ~)")]
    UnknownType(String),

    #[error("invalid Cartan matrix: {0}")]
    InvalidCartan(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("ball enumeration would exceed the element budget of {cap}")]
    BudgetExceeded { cap: usize },

    #[error("element of length {needed} lies outside the computed ball of radius {ball}")]
    BallTooSmall { needed: usize, ball: usize },

    #[error("operation needs the {expected} basis")]
    BasisMismatch { expected: &'static str },

    #[error("no unit pivot available; matrix is not invertible over R(G) by elimination")]
    NotInvertible,

    #[error("cache file {path}: {source}")]
    Cache {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cache file {0} is corrupt")]
    CacheCorrupt(PathBuf),
}

pub type Result<T> = std::result::Result<T, Error>;
