use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid schema: {0}")]
    InvalidSchema(String),

    #[error("duplicate tuple id `{0}`")]
    DuplicateId(String),

    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("header mismatch: expected attributes {expected:?}, found {found:?}")]
    HeaderMismatch {
        expected: Vec<String>,
        found: Vec<String>,
    },

    #[error("non-numeric cell `{value}` at row {row}, column `{column}`")]
    NonNumeric {
        row: usize,
        column: String,
        value: String,
    },

    #[error("row {row} has {found} cells, expected {expected}")]
    RaggedRow {
        row: usize,
        expected: usize,
        found: usize,
    },

    #[error("relation is empty")]
    EmptyRelation,

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("epsilon {0} outside [-1, 1]")]
    InvalidEpsilon(f64),

    #[error("invalid transform: {0}")]
    InvalidTransform(String),

    #[error("invalid constraint: {0}")]
    InvalidConstraint(String),

    #[error("weight constraints admit no weight vector")]
    EmptyPolytope,

    #[error("tuple `{0}` compared with itself")]
    SelfComparison(String),

    #[error("sorted lists do not cover the same objects: {0}")]
    InconsistentUniverse(String),

    #[error("invalid sorted list: {0}")]
    InvalidSortedList(String),

    #[error("k must be at least 1")]
    ZeroK,

    #[error("LP solver exceeded {0} pivots")]
    IterationLimit(usize),

    #[error("partition count must be at least 1")]
    ZeroPartitions,

    #[error("unknown algorithm `{0}`")]
    UnknownAlgorithm(String),

    #[error("unknown distribution `{0}`")]
    UnknownDistribution(String),
}
