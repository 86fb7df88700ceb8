use proptest::prelude::*;

use sbm_spectral::linalg::{
    materialize, AdjacencyOperator, CenteredOperator, DenseOperator, LinearOperator,
    ModularityCmOperator, ModularityErOperator,
};
use sbm_spectral::sbm::{make_planted_partition, sample_graph};
use sbm_spectral::Graph;

fn random_graph(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for i in 0..n {
        for j in i + 1..n {
            if bits[k % bits.len()] {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges).unwrap()
}

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (2usize..40, prop::collection::vec(any::<bool>(), 1..800))
        .prop_map(|(n, bits)| random_graph(n, &bits))
}

fn assert_symmetric(d: &DenseOperator, n: usize) {
    for i in 0..n {
        for j in 0..n {
            assert!((d.get(i, j) - d.get(j, i)).abs() < 1e-12);
        }
    }
}

proptest! {
    #[test]
    fn operators_are_symmetric(g in graph_strategy()) {
        let n = g.n();
        assert_symmetric(&materialize(&AdjacencyOperator::new(&g)), n);
        assert_symmetric(&materialize(&ModularityErOperator::new(&g, None).unwrap()), n);
        if g.m() > 0 {
            assert_symmetric(&materialize(&ModularityCmOperator::new(&g).unwrap()), n);
        }
    }

    #[test]
    fn er_operator_is_a_minus_pj(g in graph_strategy(), x in prop::collection::vec(-1.0f64..1.0, 40)) {
        let n = g.n();
        let p = 2.0 * g.m() as f64 / (n * n) as f64;
        let op = ModularityErOperator::new(&g, None).unwrap();
        let dense = DenseOperator::from_fn(n, |i, j| if g.has_edge(i, j) { 1.0 } else { 0.0 } - p);
        let x = &x[..n];
        let a = op.matvec(x).unwrap();
        let b = dense.matvec(x).unwrap();
        for (u, v) in a.iter().zip(&b) {
            prop_assert!((u - v).abs() < 1e-12);
        }
    }

    #[test]
    fn cm_equals_er_on_regular_graphs(n in 5usize..60, k in 1usize..4, x in prop::collection::vec(-1.0f64..1.0, 60)) {
        // circulant graph: i ~ i +- 1..=k, degree 2k
        prop_assume!(2 * k < n);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (1..=k).map(move |d| (i, (i + d) % n)))
            .map(|(i, j)| (i.min(j), i.max(j)))
            .collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        let er = ModularityErOperator::new(&g, None).unwrap().matvec(&x[..n]).unwrap();
        let cm = ModularityCmOperator::new(&g).unwrap().matvec(&x[..n]).unwrap();
        for (u, v) in er.iter().zip(&cm) {
            prop_assert!((u - v).abs() < 1e-12);
        }
    }
}

#[test]
fn centered_operator_subtracts_block_means() {
    let (params, truth) = make_planted_partition(90, 3, 12.0, 3.0).unwrap();
    let g = sample_graph(&params, &truth, 4).unwrap();
    let op = CenteredOperator::new(&g, &params, &truth).unwrap();
    let dense = DenseOperator::from_fn(90, |i, j| {
        let a = if g.has_edge(i, j) { 1.0 } else { 0.0 };
        let p = if truth.label(i) == truth.label(j) {
            params.pin()
        } else {
            params.pout()
        };
        a - p
    });
    let x: Vec<f64> = (0..90)
        .map(|i| ((i * 37 % 11) as f64 - 5.0) / 3.0)
        .collect();
    let a = op.matvec(&x).unwrap();
    let b = dense.matvec(&x).unwrap();
    for (u, v) in a.iter().zip(&b) {
        assert!((u - v).abs() < 1e-12);
    }
}

#[test]
fn dimension_mismatch_is_an_error() {
    let g = Graph::empty(5);
    let op = AdjacencyOperator::new(&g);
    assert!(op.matvec(&[1.0; 4]).is_err());
}
