//! Matrix-free symmetric operators over a [`Graph`].

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sbm::{BlockParams, Partition};

/// A real linear map `R^n -> R^n` available only through its action.
pub trait LinearOperator: Sync {
    fn dim(&self) -> usize;

    /// `y = Op x`. Lengths are the caller's responsibility.
    fn apply_unchecked(&self, x: &[f64], y: &mut [f64]);

    fn is_symmetric(&self) -> bool {
        true
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) -> Result<()> {
        let n = self.dim();
        for len in [x.len(), y.len()] {
            if len != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: len,
                });
            }
        }
        self.apply_unchecked(x, y);
        Ok(())
    }

    fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        let mut y = vec![0.0; self.dim()];
        self.apply(x, &mut y)?;
        Ok(y)
    }
}

impl<T: LinearOperator + ?Sized> LinearOperator for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }
    fn apply_unchecked(&self, x: &[f64], y: &mut [f64]) {
        (**self).apply_unchecked(x, y)
    }
    fn is_symmetric(&self) -> bool {
        (**self).is_symmetric()
    }
}

fn adjacency_apply(graph: &Graph, x: &[f64], y: &mut [f64]) {
    for (i, yi) in y.iter_mut().enumerate() {
        *yi = graph.neighbors(i).iter().map(|&j| x[j as usize]).sum();
    }
}

/// The adjacency matrix `A`.
#[derive(Debug, Clone, Copy)]
pub struct AdjacencyOperator<'g> {
    graph: &'g Graph,
}

impl<'g> AdjacencyOperator<'g> {
    pub fn new(graph: &'g Graph) -> Self {
        AdjacencyOperator { graph }
    }
}

impl LinearOperator for AdjacencyOperator<'_> {
    fn dim(&self) -> usize {
        self.graph.n()
    }
    fn apply_unchecked(&self, x: &[f64], y: &mut [f64]) {
        adjacency_apply(self.graph, x, y);
    }
}

/// Modularity matrix with an Erdős–Rényi null, `B = A - p J`.
///
/// The rank-one term is applied as `p (1^T x) 1`; `J` is never formed.
#[derive(Debug, Clone, Copy)]
pub struct ModularityErOperator<'g> {
    graph: &'g Graph,
    p: f64,
}

impl<'g> ModularityErOperator<'g> {
    /// `p` defaults to the empirical density `2m / n^2`.
    pub fn new(graph: &'g Graph, p: Option<f64>) -> Result<Self> {
        let p = p.unwrap_or_else(|| graph.empirical_p());
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::ProbabilityOutOfRange {
                name: "p",
                value: p,
            });
        }
        Ok(ModularityErOperator { graph, p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

impl LinearOperator for ModularityErOperator<'_> {
    fn dim(&self) -> usize {
        self.graph.n()
    }
    fn apply_unchecked(&self, x: &[f64], y: &mut [f64]) {
        adjacency_apply(self.graph, x, y);
        let shift = self.p * x.iter().sum::<f64>();
        y.iter_mut().for_each(|yi| *yi -= shift);
    }
}

/// Modularity matrix with the configuration-model null,
/// `B = A - k k^T / 2m`.
#[derive(Debug, Clone)]
pub struct ModularityCmOperator<'g> {
    graph: &'g Graph,
    degrees: Vec<f64>,
    two_m: f64,
}

impl<'g> ModularityCmOperator<'g> {
    pub fn new(graph: &'g Graph) -> Result<Self> {
        if graph.m() == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(ModularityCmOperator {
            graph,
            degrees: graph.degrees().into_iter().map(|d| d as f64).collect(),
            two_m: 2.0 * graph.m() as f64,
        })
    }
}

impl LinearOperator for ModularityCmOperator<'_> {
    fn dim(&self) -> usize {
        self.graph.n()
    }
    fn apply_unchecked(&self, x: &[f64], y: &mut [f64]) {
        adjacency_apply(self.graph, x, y);
        let coef = dot(&self.degrees, x) / self.two_m;
        for (yi, ki) in y.iter_mut().zip(&self.degrees) {
            *yi -= coef * ki;
        }
    }
}

/// The fluctuation matrix `X = A - <A>`, where `<A>` is the ensemble mean
/// of the planted-partition model: `pin` on within-group entries (diagonal
/// included), `pout` elsewhere. Needs the true partition, so it is a
/// diagnostic, not something a detection algorithm may use.
#[derive(Debug, Clone)]
pub struct CenteredOperator<'g> {
    graph: &'g Graph,
    labels: &'g [usize],
    q: usize,
    pin: f64,
    pout: f64,
}

impl<'g> CenteredOperator<'g> {
    pub fn new(graph: &'g Graph, params: &BlockParams, partition: &'g Partition) -> Result<Self> {
        if graph.n() != params.n() || partition.n() != params.n() || partition.q() != params.q() {
            return Err(Error::PartitionMismatch(
                "graph, parameters and partition disagree on n or q".into(),
            ));
        }
        Ok(CenteredOperator {
            graph,
            labels: partition.labels(),
            q: partition.q(),
            pin: params.pin(),
            pout: params.pout(),
        })
    }
}

impl LinearOperator for CenteredOperator<'_> {
    fn dim(&self) -> usize {
        self.graph.n()
    }
    fn apply_unchecked(&self, x: &[f64], y: &mut [f64]) {
        adjacency_apply(self.graph, x, y);
        let mut group_sums = vec![0.0; self.q];
        for (&l, &xi) in self.labels.iter().zip(x) {
            group_sums[l] += xi;
        }
        let total: f64 = group_sums.iter().sum();
        for (yi, &l) in y.iter_mut().zip(self.labels) {
            *yi -= self.pout * total + (self.pin - self.pout) * group_sums[l];
        }
    }
}

/// An explicit dense matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    n: usize,
    data: Vec<f64>,
    symmetric: bool,
}

impl DenseOperator {
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: data.len(),
            });
        }
        let symmetric = (0..n).all(|i| (0..i).all(|j| data[i * n + j] == data[j * n + i]));
        Ok(DenseOperator { n, data, symmetric })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let data = (0..n * n).map(|idx| f(idx / n, idx % n)).collect();
        DenseOperator::from_row_major(n, data).expect("size is n*n")
    }

    pub fn diagonal(values: &[f64]) -> Self {
        DenseOperator::from_fn(values.len(), |i, j| if i == j { values[i] } else { 0.0 })
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_sq(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum()
    }
}

impl LinearOperator for DenseOperator {
    fn dim(&self) -> usize {
        self.n
    }
    fn apply_unchecked(&self, x: &[f64], y: &mut [f64]) {
        for (row, yi) in self.data.chunks_exact(self.n).zip(y.iter_mut()) {
            *yi = dot(row, x);
        }
    }
    fn is_symmetric(&self) -> bool {
        self.symmetric
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn axpy(alpha: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

pub(crate) fn norm(x: &[f64]) -> f64 {
    dot(x, x).sqrt()
}
