//! Matrix-free Lanczos against the dense solver on the same modularity
//! operator, and the eigenvector binary format.
//!
//! cargo run --release --example lanczos_vs_dense

use sbm_spectral::linalg::{
    dense_full_spectrum, extremal_eigenpairs, read_eigenvectors, write_eigenvectors,
    ModularityErOperator, DEFAULT_DENSE_LIMIT, DEFAULT_TOL,
};
use sbm_spectral::sbm::{make_planted_partition, sample_graph};

fn main() -> sbm_spectral::Result<()> {
    let (params, truth) = make_planted_partition(2000, 2, 24.0, 8.0)?;
    let graph = sample_graph(&params, &truth, 9)?;
    let op = ModularityErOperator::new(&graph, None)?;

    let sparse = extremal_eigenpairs(&op, 3, DEFAULT_TOL, 2000, 9)?;
    let dense = dense_full_spectrum(&op, DEFAULT_DENSE_LIMIT, false)?;
    println!("{}", sparse.to_json()?);
    for (i, (a, b)) in sparse
        .eigenvalues
        .iter()
        .zip(&dense.eigenvalues)
        .enumerate()
    {
        println!(
            "lambda_{}: lanczos {a:.10} dense {b:.10} diff {:.1e}",
            i + 1,
            (a - b).abs()
        );
    }

    let vectors = sparse.eigenvectors.expect("lanczos returns vectors");
    let mut bytes = Vec::new();
    write_eigenvectors(&mut bytes, &vectors)?;
    assert_eq!(read_eigenvectors(&mut bytes.as_slice())?, vectors);
    println!("eigenvectors: {} bytes round-tripped", bytes.len());
    Ok(())
}
