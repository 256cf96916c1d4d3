use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("expected a {expected}x{expected} array, row {row} has {found} entries")]
    DimensionMismatch {
        expected: usize,
        row: usize,
        found: usize,
    },

    #[error("symbol {symbol} at ({row}, {col}) is outside 0..{order}")]
    SymbolOutOfRange {
        row: usize,
        col: usize,
        symbol: usize,
        order: usize,
    },

    #[error("row {row} repeats symbol {symbol} (columns {first} and {second})")]
    DuplicateInRow {
        row: usize,
        symbol: usize,
        first: usize,
        second: usize,
    },

    #[error("column {col} repeats symbol {symbol} (rows {first} and {second})")]
    DuplicateInColumn {
        col: usize,
        symbol: usize,
        first: usize,
        second: usize,
    },

    #[error("order must be at least {min}, got {got}")]
    OrderTooSmall { min: usize, got: usize },

    #[error("order {order} exceeds the cap of {cap}")]
    OrderCapExceeded { order: usize, cap: usize },

    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),

    #[error("symbol {symbol} is outside 0..{order}")]
    SymbolIndex { symbol: usize, order: usize },

    #[error("vertex {vertex} is outside 0..{n}")]
    VertexIndex { vertex: usize, n: usize },

    #[error("probability {0} is outside the allowed range")]
    InvalidProbability(f64),

    #[error("parameter `{name}` = {value} is outside its domain ({domain})")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("{what} is limited to n <= {cap}, got n = {n}; use a sampling-based property instead")]
    ExactCapExceeded {
        what: &'static str,
        cap: usize,
        n: usize,
    },

    #[error("the normalized adjacency matrix is undefined for an empty multiset (k = 0)")]
    EmptyMultiset,

    #[error("square is not from the paired-example family (tag: {0})")]
    WrongFamily(String),

    #[error("invalid configuration field `{field}`: {reason}")]
    InvalidConfig { field: String, reason: String },

    #[error("parse error at line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("checksum mismatch: stored {stored}, computed {computed}")]
    ChecksumMismatch { stored: String, computed: String },

    #[error("empty sample")]
    EmptySample,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
