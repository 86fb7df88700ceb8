//! The planted-partition stochastic block model.
//!
//! `n` vertices are split into `q` equal groups; each unordered pair of
//! distinct vertices is joined independently with probability `cin / n`
//! inside a group and `cout / n` across groups.

use rand::Rng as _;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng;

/// Validated planted-partition parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BlockParams {
    n: usize,
    q: usize,
    cin: f64,
    cout: f64,
}

impl BlockParams {
    pub fn new(n: usize, q: usize, cin: f64, cout: f64) -> Result<Self> {
        if q < 2 {
            return Err(Error::TooFewGroups(q));
        }
        if n == 0 || !n.is_multiple_of(q) {
            return Err(Error::NotDivisible { n, q });
        }
        for (name, value) in [("cin", cin), ("cout", cout)] {
            if !value.is_finite() || value < 0.0 {
                return Err(Error::NegativeDegree { name, value });
            }
        }
        let nf = n as f64;
        if cin / nf > 1.0 {
            return Err(Error::ProbabilityOutOfRange {
                name: "pin",
                value: cin / nf,
            });
        }
        if cout / nf > 1.0 {
            return Err(Error::ProbabilityOutOfRange {
                name: "pout",
                value: cout / nf,
            });
        }
        Ok(BlockParams { n, q, cin, cout })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn cin(&self) -> f64 {
        self.cin
    }

    pub fn cout(&self) -> f64 {
        self.cout
    }

    /// Within-group edge probability.
    pub fn pin(&self) -> f64 {
        self.cin / self.n as f64
    }

    /// Between-group edge probability.
    pub fn pout(&self) -> f64 {
        self.cout / self.n as f64
    }

    pub fn group_size(&self) -> usize {
        self.n / self.q
    }

    /// Mean edge probability over all pairs, `(pin + (q-1) pout) / q`.
    pub fn mean_p(&self) -> f64 {
        mean_degree(self) / self.n as f64
    }
}

/// Expected average degree `[cin + (q-1) cout] / q`.
pub fn mean_degree(params: &BlockParams) -> f64 {
    let q = params.q as f64;
    (params.cin + (q - 1.0) * params.cout) / q
}

/// Group labels in `[0, q)`, one per vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    labels: Vec<usize>,
    q: usize,
}

impl Partition {
    pub fn new(labels: Vec<usize>, q: usize) -> Result<Self> {
        if q == 0 {
            return Err(Error::TooFewGroups(q));
        }
        if let Some((i, &l)) = labels.iter().enumerate().find(|(_, &l)| l >= q) {
            return Err(Error::PartitionMismatch(format!(
                "label {l} at vertex {i} outside [0, {q})"
            )));
        }
        Ok(Partition { labels, q })
    }

    /// Contiguous equal groups: vertex `i` belongs to group `floor(i q / n)`.
    pub fn canonical(n: usize, q: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::TooFewGroups(q));
        }
        if n == 0 || !n.is_multiple_of(q) {
            return Err(Error::NotDivisible { n, q });
        }
        Ok(Partition {
            labels: (0..n).map(|i| i * q / n).collect(),
            q,
        })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> usize {
        self.labels[i]
    }

    pub fn group_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.q];
        for &l in &self.labels {
            sizes[l] += 1;
        }
        sizes
    }

    /// Vertices of each group, ascending.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut groups = vec![Vec::new(); self.q];
        for (i, &l) in self.labels.iter().enumerate() {
            groups[l].push(i);
        }
        groups
    }

    /// Relabels with `perm[old] = new`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self> {
        Partition::new(self.labels.iter().map(|&l| perm[l]).collect(), self.q)
    }
}

/// Validated parameters plus the canonical ground-truth partition.
pub fn make_planted_partition(
    n: usize,
    q: usize,
    cin: f64,
    cout: f64,
) -> Result<(BlockParams, Partition)> {
    let params = BlockParams::new(n, q, cin, cout)?;
    let partition = Partition::canonical(n, q)?;
    Ok((params, partition))
}

/// Samples a graph from the planted-partition model.
///
/// Pairs are visited block pair by block pair with geometric skipping, so
/// the cost is `O(n + m)` expected. Block pair `(r, s)` draws from its own
/// substream of `seed` (see [`crate::rng`]); the result does not depend on
/// scheduling.
pub fn sample_graph(params: &BlockParams, partition: &Partition, seed: u64) -> Result<Graph> {
    if partition.n() != params.n || partition.q() != params.q {
        return Err(Error::PartitionMismatch(format!(
            "partition has n = {}, q = {}; params have n = {}, q = {}",
            partition.n(),
            partition.q(),
            params.n,
            params.q
        )));
    }
    let q = params.q;
    let members = partition.members();
    let pairs: Vec<(usize, usize)> = (0..q).flat_map(|r| (r..q).map(move |s| (r, s))).collect();

    let blocks: Vec<Vec<(usize, usize)>> = pairs
        .par_iter()
        .map(|&(r, s)| {
            let mut rng = rng::block_pair_stream(seed, q, r, s);
            if r == s {
                sample_within(&members[r], params.pin(), &mut rng)
            } else {
                sample_between(&members[r], &members[s], params.pout(), &mut rng)
            }
        })
        .collect();

    let mut degrees = vec![0usize; params.n];
    for &(i, j) in blocks.iter().flatten() {
        degrees[i] += 1;
        degrees[j] += 1;
    }
    Ok(Graph::assemble(
        params.n,
        &degrees,
        blocks.into_iter().flatten(),
    ))
}

/// Yields the positions of successes in `total` Bernoulli(`p`) trials.
struct GeometricSkipper {
    next: f64,
    total: f64,
    log_fail: f64,
    p: f64,
}

impl GeometricSkipper {
    fn new(total: u64, p: f64) -> Self {
        GeometricSkipper {
            next: -1.0,
            total: total as f64,
            log_fail: (1.0 - p).ln(),
            p,
        }
    }

    /// Advances to the next success; returns the gap from the previous
    /// success (or from position -1), or `None` when past the end.
    fn advance(&mut self, rng: &mut rng::Rng) -> Option<u64> {
        if self.p <= 0.0 {
            return None;
        }
        let gap = if self.p >= 1.0 {
            1.0
        } else {
            let u: f64 = 1.0 - rng.gen::<f64>();
            1.0 + (u.ln() / self.log_fail).floor()
        };
        self.next += gap;
        if self.next >= self.total {
            None
        } else {
            Some(gap as u64)
        }
    }
}

fn sample_within(group: &[usize], p: f64, rng: &mut rng::Rng) -> Vec<(usize, usize)> {
    let s = group.len();
    let total = (s as u64) * (s as u64).saturating_sub(1) / 2;
    let mut edges = Vec::with_capacity((total as f64 * p * 1.1) as usize + 16);
    let mut skipper = GeometricSkipper::new(total, p);
    // Lower-triangle walk: pair index k maps to (row, col) with col < row.
    let (mut row, mut col) = (1usize, 0u64);
    let mut first = true;
    while let Some(gap) = skipper.advance(rng) {
        col += if first { gap - 1 } else { gap };
        first = false;
        while col >= row as u64 {
            col -= row as u64;
            row += 1;
        }
        edges.push((group[col as usize], group[row]));
    }
    edges
}

fn sample_between(a: &[usize], b: &[usize], p: f64, rng: &mut rng::Rng) -> Vec<(usize, usize)> {
    let total = a.len() as u64 * b.len() as u64;
    let mut edges = Vec::with_capacity((total as f64 * p * 1.1) as usize + 16);
    let mut skipper = GeometricSkipper::new(total, p);
    let width = b.len() as u64;
    let mut idx: u64 = 0;
    let mut first = true;
    while let Some(gap) = skipper.advance(rng) {
        idx += if first { gap - 1 } else { gap };
        first = false;
        edges.push((a[(idx / width) as usize], b[(idx % width) as usize]));
    }
    edges
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_labels_small() {
        let (params, part) = make_planted_partition(4, 2, 4.0, 0.0).unwrap();
        assert_eq!(part.labels(), &[0, 0, 1, 1]);
        assert_eq!(params.pin(), 1.0);
    }

    #[test]
    fn precondition_errors() {
        assert!(matches!(
            make_planted_partition(10, 3, 1.0, 1.0),
            Err(Error::NotDivisible { n: 10, q: 3 })
        ));
        assert!(matches!(
            make_planted_partition(4, 2, 8.0, 0.0),
            Err(Error::ProbabilityOutOfRange { name: "pin", .. })
        ));
        assert!(matches!(
            make_planted_partition(4, 1, 1.0, 1.0),
            Err(Error::TooFewGroups(1))
        ));
        assert!(make_planted_partition(4, 2, -1.0, 0.0).is_err());
    }

    #[test]
    fn mean_degree_examples() {
        let p = BlockParams::new(100, 2, 12.0, 4.0).unwrap();
        assert_eq!(mean_degree(&p), 8.0);
        let p = BlockParams::new(100, 4, 16.0, 0.0).unwrap();
        assert_eq!(mean_degree(&p), 4.0);
        let p = BlockParams::new(100, 2, 7.5, 7.5).unwrap();
        assert_eq!(mean_degree(&p), 7.5);
    }

    #[test]
    fn zero_probability_gives_empty_graph() {
        let (params, part) = make_planted_partition(200, 2, 0.0, 0.0).unwrap();
        for seed in 0..5 {
            assert_eq!(sample_graph(&params, &part, seed).unwrap().m(), 0);
        }
    }

    #[test]
    fn probability_one_within_groups() {
        let (params, part) = make_planted_partition(4, 2, 4.0, 0.0).unwrap();
        let g = sample_graph(&params, &part, 9).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn complete_graph_when_both_probabilities_one() {
        let (params, part) = make_planted_partition(9, 3, 9.0, 9.0).unwrap();
        let g = sample_graph(&params, &part, 1).unwrap();
        assert_eq!(g.m(), 36);
        g.validate().unwrap();
    }

    #[test]
    fn mismatched_partition_rejected() {
        let params = BlockParams::new(6, 2, 1.0, 1.0).unwrap();
        let part = Partition::canonical(6, 3).unwrap();
        assert!(matches!(
            sample_graph(&params, &part, 0),
            Err(Error::PartitionMismatch(_))
        ));
    }
}
