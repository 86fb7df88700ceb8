//! Stochastic block model networks, spectral modularity community detection,
//! and the random-matrix predictions that locate its detectability
//! transition.
//!
//! * [`sbm`] samples planted-partition graphs in `O(n + m)`.
//! * [`linalg`] provides matrix-free adjacency and modularity operators, a
//!   thick-restart Lanczos solver, a dense Householder/QL solver and a
//!   stochastic trace estimator.
//! * [`theory`] evaluates the closed forms: semicircle density, outlier
//!   eigenvalues, detectability margin and expected accuracy.
//! * [`detect`] runs spectral modularity detection and scores it.
//! * [`harness`] drives reproducible sweeps and spectrum/moment checks.
//!
//! ```
//! use sbm_spectral::{detect, sbm, theory};
//!
//! let (params, truth) = sbm::make_planted_partition(2000, 2, 24.0, 8.0)?;
//! let graph = sbm::sample_graph(&params, &truth, 7)?;
//! let found = detect::spectral_partition_q2(&graph, &detect::DetectOptions::with_seed(7))?;
//! let acc = detect::accuracy(&found.labels, &truth)?;
//! assert!(acc > 0.8);
//! assert!(found.detected);
//! assert_eq!(theory::z1_theory(24.0, 8.0)?, 10.0);
//! # Ok::<(), sbm_spectral::Error>(())
//! ```

pub mod cluster;
pub mod detect;
mod error;
pub mod graph;
pub mod harness;
pub mod io;
pub mod linalg;
pub mod rng;
pub mod sbm;
pub mod theory;

pub use error::{Error, Result};
pub use graph::Graph;
pub use sbm::{BlockParams, Partition};
