//! Linear operators and eigensolvers.

mod dense;
mod histogram;
mod lanczos;
mod operator;
mod spectrum;
mod trace;

pub use dense::{
    dense_full_spectrum, materialize, symmetric_eigen, SymmetricEigen, DEFAULT_DENSE_LIMIT,
};
pub use histogram::{default_range, spectral_histogram, Histogram};
pub use lanczos::{
    default_max_iter, extremal_eigenpairs, extremal_eigenpairs_with, LanczosOptions, DEFAULT_TOL,
};
pub use operator::{
    AdjacencyOperator, CenteredOperator, DenseOperator, LinearOperator, ModularityCmOperator,
    ModularityErOperator,
};
pub use spectrum::{read_eigenvectors, write_eigenvectors, SpectrumResult};
pub use trace::{moment_trace_estimate, TraceEstimate};
