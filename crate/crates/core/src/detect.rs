//! Spectral modularity community detection and scoring.

use serde::Serialize;

use crate::cluster::kmeans;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::{
    default_max_iter, extremal_eigenpairs_with, LanczosOptions, ModularityErOperator, DEFAULT_TOL,
};
use crate::sbm::Partition;

/// Relative gap the leading eigenvalue needs over the bulk-edge estimate
/// before the structure counts as detected.
pub const DEFAULT_SEPARATION: f64 = 0.02;

#[derive(Debug, Clone, PartialEq)]
pub struct DetectOptions {
    pub seed: u64,
    pub tol: f64,
    /// Operator applications; `None` means `10 sqrt(n) + 200`.
    pub max_iter: Option<usize>,
    pub separation: f64,
    pub kmeans_restarts: usize,
}

impl Default for DetectOptions {
    fn default() -> Self {
        DetectOptions {
            seed: 0,
            tol: DEFAULT_TOL,
            max_iter: None,
            separation: DEFAULT_SEPARATION,
            kmeans_restarts: 10,
        }
    }
}

impl DetectOptions {
    pub fn with_seed(seed: u64) -> Self {
        DetectOptions {
            seed,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetectionResult {
    #[serde(skip)]
    pub labels: Partition,
    pub leading_eigenvalue: f64,
    /// Largest eigenvalue not attributed to community structure; the bulk
    /// edge proxy.
    pub band_edge_estimate: f64,
    pub detected: bool,
    /// All computed eigenvalues, descending.
    pub eigenvalues: Vec<f64>,
    pub residuals: Vec<f64>,
    pub iterations: usize,
}

fn solve(graph: &Graph, k: usize, opts: &DetectOptions) -> Result<crate::linalg::SpectrumResult> {
    if graph.m() == 0 {
        return Err(Error::EmptyGraph);
    }
    let n = graph.n();
    if n < k + 1 {
        return Err(Error::InvalidArgument(format!(
            "graph with {n} vertices is too small"
        )));
    }
    let op = ModularityErOperator::new(graph, None)?;
    extremal_eigenpairs_with(
        &op,
        &LanczosOptions {
            k,
            tol: opts.tol,
            max_iter: opts.max_iter.unwrap_or_else(|| default_max_iter(n)),
            seed: opts.seed,
            basis_size: None,
        },
    )
}

fn separated(leading: f64, edge: f64, separation: f64) -> bool {
    leading > edge + separation * edge.abs()
}

/// Two-way split by the signs of the leading eigenvector of `A - p J`,
/// `p = 2m / n^2`. Zero entries go to group 0.
pub fn spectral_partition_q2(graph: &Graph, opts: &DetectOptions) -> Result<DetectionResult> {
    let spectrum = solve(graph, 2, opts)?;
    let leading = &spectrum.eigenvectors.as_ref().expect("vectors")[0];
    let labels = Partition::new(sign_labels(leading), 2)?;
    let (z1, z2) = (spectrum.eigenvalues[0], spectrum.eigenvalues[1]);
    Ok(DetectionResult {
        labels,
        leading_eigenvalue: z1,
        band_edge_estimate: z2,
        detected: separated(z1, z2, opts.separation),
        eigenvalues: spectrum.eigenvalues,
        residuals: spectrum.residuals,
        iterations: spectrum.iterations,
    })
}

pub(crate) fn sign_labels(v: &[f64]) -> Vec<usize> {
    v.iter().map(|&x| if x >= 0.0 { 0 } else { 1 }).collect()
}

/// `q`-way split: k-means on the embedding given by the top `q - 1`
/// modularity eigenvectors (scaled by `sqrt(n)`). The `q`-th eigenvalue is
/// the bulk-edge proxy. For `q = 2` this is exactly
/// [`spectral_partition_q2`].
pub fn spectral_partition_general(
    graph: &Graph,
    q: usize,
    opts: &DetectOptions,
) -> Result<DetectionResult> {
    if q < 2 {
        return Err(Error::TooFewGroups(q));
    }
    if q == 2 {
        return spectral_partition_q2(graph, opts);
    }
    let spectrum = solve(graph, q, opts)?;
    let vectors = spectrum.eigenvectors.as_ref().expect("vectors");
    let n = graph.n();
    let dim = q - 1;
    let scale = (n as f64).sqrt();
    let mut points = vec![0.0; n * dim];
    for (d, v) in vectors[..dim].iter().enumerate() {
        for i in 0..n {
            points[i * dim + d] = v[i] * scale;
        }
    }
    let clustering = kmeans(&points, dim, q, opts.kmeans_restarts, opts.seed)?;
    let (outlier, edge) = (spectrum.eigenvalues[q - 2], spectrum.eigenvalues[q - 1]);
    Ok(DetectionResult {
        labels: Partition::new(clustering.labels, q)?,
        leading_eigenvalue: spectrum.eigenvalues[0],
        band_edge_estimate: edge,
        detected: separated(outlier, edge, opts.separation),
        eigenvalues: spectrum.eigenvalues,
        residuals: spectrum.residuals,
        iterations: spectrum.iterations,
    })
}

/// Fraction of vertices labeled correctly under the best matching of
/// inferred to true labels (exhaustive over the `q!` matchings).
pub fn accuracy(inferred: &Partition, truth: &Partition) -> Result<f64> {
    if inferred.n() != truth.n() {
        return Err(Error::PartitionMismatch(format!(
            "{} vs {} vertices",
            inferred.n(),
            truth.n()
        )));
    }
    if inferred.q() != truth.q() {
        return Err(Error::PartitionMismatch(format!(
            "{} vs {} groups",
            inferred.q(),
            truth.q()
        )));
    }
    let q = truth.q();
    if q > 8 {
        return Err(Error::TooManyGroups(q));
    }
    if truth.n() == 0 {
        return Err(Error::EmptyInput);
    }
    let mut confusion = vec![vec![0usize; q]; q];
    for (&a, &b) in inferred.labels().iter().zip(truth.labels()) {
        confusion[a][b] += 1;
    }
    let mut used = vec![false; q];
    let best = best_matching(&confusion, 0, &mut used);
    Ok(best as f64 / truth.n() as f64)
}

fn best_matching(confusion: &[Vec<usize>], row: usize, used: &mut [bool]) -> usize {
    if row == confusion.len() {
        return 0;
    }
    let mut best = 0;
    for col in 0..confusion.len() {
        if !used[col] {
            used[col] = true;
            best = best.max(confusion[row][col] + best_matching(confusion, row + 1, used));
            used[col] = false;
        }
    }
    best
}
