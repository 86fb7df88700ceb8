//! Spectral modularity detection on two groups, above and below the
//! detectability threshold.
//!
//! cargo run --release --example detect_two_groups

use sbm_spectral::detect::{accuracy, spectral_partition_q2, DetectOptions};
use sbm_spectral::sbm::{make_planted_partition, sample_graph};
use sbm_spectral::theory;

fn main() -> sbm_spectral::Result<()> {
    for (cin, cout) in [(9.5, 6.5), (12.0, 4.0), (14.0, 2.0)] {
        let (params, truth) = make_planted_partition(20_000, 2, cin, cout)?;
        let graph = sample_graph(&params, &truth, 11)?;
        let found = spectral_partition_q2(&graph, &DetectOptions::with_seed(11))?;
        println!(
            "cin={cin:>4} cout={cout:>4}: z1={:.3} bulk={:.3} detected={:<5} accuracy={:.4} (theory {:.4})",
            found.leading_eigenvalue,
            found.band_edge_estimate,
            found.detected,
            accuracy(&found.labels, &truth)?,
            theory::expected_accuracy(cin, cout)?,
        );
    }
    Ok(())
}
