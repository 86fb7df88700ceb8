//! Undirected simple graphs in compressed sparse row form.

use crate::error::{Error, Result};

/// An undirected simple graph.
///
/// Every edge `{i, j}` appears in both `neighbors(i)` and `neighbors(j)`;
/// neighbor lists are sorted ascending. There are no self-loops and no
/// duplicate edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    offsets: Vec<usize>,
    targets: Vec<u32>,
    m: usize,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            offsets: vec![0; n + 1],
            targets: Vec::new(),
            m: 0,
        }
    }

    /// Builds a graph from undirected edges. Orientation of each pair is
    /// irrelevant; self-loops, duplicates and out-of-range endpoints are
    /// rejected.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > u32::MAX as usize {
            return Err(Error::InvalidGraph(format!(
                "{n} vertices exceeds u32 indexing"
            )));
        }
        let mut degrees = vec![0usize; n];
        for &(i, j) in edges {
            if i >= n || j >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({i}, {j}) out of range for {n} vertices"
                )));
            }
            if i == j {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {i}")));
            }
            degrees[i] += 1;
            degrees[j] += 1;
        }
        let graph = Self::assemble(n, &degrees, edges.iter().copied());
        for i in 0..n {
            if graph.neighbors(i).windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("duplicate edge at vertex {i}")));
            }
        }
        Ok(graph)
    }

    /// Assembles the CSR arrays. Callers guarantee the edges are valid and
    /// `degrees` matches them.
    pub(crate) fn assemble(
        n: usize,
        degrees: &[usize],
        edges: impl Iterator<Item = (usize, usize)>,
    ) -> Self {
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        let mut acc = 0;
        for &d in degrees {
            acc += d;
            offsets.push(acc);
        }
        let mut cursor = offsets[..n].to_vec();
        let mut targets = vec![0u32; acc];
        for (i, j) in edges {
            targets[cursor[i]] = j as u32;
            cursor[i] += 1;
            targets[cursor[j]] = i as u32;
            cursor[j] += 1;
        }
        for i in 0..n {
            targets[offsets[i]..offsets[i + 1]].sort_unstable();
        }
        Graph {
            n,
            offsets,
            targets,
            m: acc / 2,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of undirected edges.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.degree(i)).collect()
    }

    pub fn neighbors(&self, i: usize) -> &[u32] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.neighbors(i).binary_search(&(j as u32)).is_ok()
    }

    /// Edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| {
            self.neighbors(i)
                .iter()
                .map(|&j| j as usize)
                .filter(move |&j| j > i)
                .map(move |j| (i, j))
        })
    }

    /// Empirical edge density `2m / n^2`, the Erdős–Rényi null probability
    /// used by the modularity operator when none is supplied.
    pub fn empirical_p(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        2.0 * self.m as f64 / (self.n as f64 * self.n as f64)
    }

    /// Checks symmetry, simplicity, sortedness and the degree sum.
    pub fn validate(&self) -> Result<()> {
        let mut total = 0;
        for i in 0..self.n {
            let nb = self.neighbors(i);
            total += nb.len();
            for w in nb.windows(2) {
                if w[0] >= w[1] {
                    return Err(Error::InvalidGraph(format!(
                        "neighbors of {i} not strictly increasing"
                    )));
                }
            }
            for &j in nb {
                let j = j as usize;
                if j == i {
                    return Err(Error::InvalidGraph(format!("self-loop at {i}")));
                }
                if j >= self.n || !self.has_edge(j, i) {
                    return Err(Error::InvalidGraph(format!(
                        "edge ({i}, {j}) not symmetric"
                    )));
                }
            }
        }
        if total != 2 * self.m {
            return Err(Error::InvalidGraph(format!(
                "degree sum {total} != 2m = {}",
                2 * self.m
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_symmetric_lists() {
        let g = Graph::from_edges(4, &[(2, 0), (0, 1), (3, 2)]).unwrap();
        assert_eq!(g.m(), 3);
        assert_eq!(g.neighbors(0), &[1, 2]);
        assert_eq!(g.neighbors(2), &[0, 3]);
        assert_eq!(g.degrees(), vec![2, 1, 2, 1]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (2, 3)]);
        g.validate().unwrap();
    }

    #[test]
    fn rejects_loops_and_duplicates() {
        assert!(matches!(
            Graph::from_edges(3, &[(1, 1)]),
            Err(Error::InvalidGraph(_))
        ));
        assert!(matches!(
            Graph::from_edges(3, &[(0, 1), (1, 0)]),
            Err(Error::InvalidGraph(_))
        ));
        assert!(matches!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(Error::InvalidGraph(_))
        ));
    }

    #[test]
    fn empty_graph_density() {
        let g = Graph::empty(5);
        assert_eq!(g.m(), 0);
        assert_eq!(g.empirical_p(), 0.0);
        g.validate().unwrap();
    }
}
