//! Sample a two-group planted-partition graph and round-trip it through the
//! edge-list and partition formats.
//!
//! cargo run --release --example generate_graph

use sbm_spectral::io::{
    read_edge_list, read_partition, write_edge_list, write_partition, EdgeListHeader,
};
use sbm_spectral::sbm::{make_planted_partition, mean_degree, sample_graph};

fn main() -> sbm_spectral::Result<()> {
    let (params, truth) = make_planted_partition(10_000, 2, 12.0, 4.0)?;
    let graph = sample_graph(&params, &truth, 42)?;

    let expected = params.n() as f64 * mean_degree(&params) / 2.0;
    println!(
        "n = {}, m = {} (expected {expected:.0})",
        graph.n(),
        graph.m()
    );
    let within = graph
        .edges()
        .filter(|&(i, j)| truth.label(i) == truth.label(j))
        .count();
    println!(
        "within-group edges: {within}, between: {}",
        graph.m() - within
    );

    let mut edges = Vec::new();
    write_edge_list(
        &mut edges,
        &graph,
        EdgeListHeader {
            n: params.n(),
            q: 2,
            seed: 42,
        },
    )?;
    let mut labels = Vec::new();
    write_partition(&mut labels, &truth)?;

    let (back, header) = read_edge_list(edges.as_slice())?;
    let truth_back = read_partition(labels.as_slice(), Some(header.q))?;
    assert_eq!(back, graph);
    assert_eq!(truth_back, truth);
    println!("round trip ok ({} bytes of edges)", edges.len());
    Ok(())
}
