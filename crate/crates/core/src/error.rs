use std::path::PathBuf;

use thiserror::Error;

/// Errors produced by the separability toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("cannot read {path}: {message}")]
    Io { path: PathBuf, message: String },

    #[error("label column `{0}` not found in header")]
    MissingLabelColumn(String),

    #[error("row {row}, column `{column}`: cannot parse `{value}` as a finite number")]
    BadCell { row: usize, column: String, value: String },

    #[error("row {row} has {found} fields, expected {expected}")]
    RaggedRow { row: usize, found: usize, expected: usize },

    #[error("data set is empty")]
    EmptyDataset,

    #[error("data set has no feature columns")]
    NoFeatures,

    #[error("all entries are equal; global standard deviation is zero")]
    ZeroVariance,

    #[error("need at least {required} classes, found {found}")]
    TooFewClasses { required: usize, found: usize },

    #[error("class `{class}` has {size} points, at least {required} required")]
    ClassTooSmall {
        class: String,
        size: usize,
        required: usize,
    },

    #[error("unknown class `{0}`")]
    UnknownClass(String),

    #[error("neighbor pool has {available} candidates, {requested} requested")]
    PoolTooSmall { available: usize, requested: usize },

    #[error("class `{class}` has {found} core points, at least {required} required")]
    TooFewCorePoints {
        class: String,
        found: usize,
        required: usize,
    },

    #[error("class pair (`{0}`, `{1}`): {2}")]
    Pair(String, String, Box<Error>),

    #[error("spanning tree needs at least one vertex")]
    EmptySubset,

    #[error("connectedness is undefined for a tree with fewer than two vertices")]
    DegenerateTree,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate input for {measure}: {reason}")]
    Degenerate {
        measure: &'static str,
        reason: &'static str,
    },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
