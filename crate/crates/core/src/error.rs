use thiserror::Error;

use crate::linalg::SpectrumResult;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex count {n} is not divisible by group count {q}")]
    NotDivisible { n: usize, q: usize },

    #[error("need at least 2 groups, got {0}")]
    TooFewGroups(usize),

    #[error("{name} = {value} is not a valid edge probability")]
    ProbabilityOutOfRange { name: &'static str, value: f64 },

    #[error("degree parameter {name} = {value} must be finite and non-negative")]
    NegativeDegree { name: &'static str, value: f64 },

    #[error("partition does not match parameters: {0}")]
    PartitionMismatch(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("dimension mismatch: operator has dimension {expected}, vector has length {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("eigensolver did not converge after {iterations} iterations (worst residual {worst_residual:.3e})")]
    NotConverged {
        iterations: usize,
        worst_residual: f64,
        best: Box<SpectrumResult>,
    },

    #[error("dense solver limit exceeded: dimension {n} > limit {limit}")]
    DenseLimitExceeded { n: usize, limit: usize },

    #[error("tridiagonal QL iteration did not converge for eigenvalue {index}")]
    QlNoConvergence { index: usize },

    #[error("empty input")]
    EmptyInput,

    #[error("histogram range has zero width")]
    ZeroWidthRange,

    #[error("cin + cout must be positive")]
    ZeroDensity,

    #[error("leading-eigenvalue formula is singular at cin = cout = {0}")]
    SingularOutlier(f64),

    #[error("disassortative parameters (cin = {cin} < cout = {cout}) are not supported")]
    Disassortative { cin: f64, cout: f64 },

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("k-means produced an empty cluster after {attempts} attempts")]
    EmptyCluster { attempts: usize },

    #[error("accuracy by permutation search supports q <= 8, got {0}")]
    TooManyGroups(usize),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
