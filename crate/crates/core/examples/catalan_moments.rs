//! Stochastic trace moments of the centered adjacency matrix against the
//! Catalan-number prediction n c^m C_m.
//!
//! cargo run --release --example catalan_moments

use sbm_spectral::harness::run_moment_check;
use sbm_spectral::BlockParams;

fn main() -> sbm_spectral::Result<()> {
    let params = BlockParams::new(5000, 2, 48.0, 16.0)?;
    println!(
        "{:>2} {:>14} {:>12} {:>14} {:>8}",
        "m", "estimate", "std err", "theory", "rel err"
    );
    for r in run_moment_check(&params, 1, 4, 30)? {
        println!(
            "{:>2} {:>14.1} {:>12.1} {:>14.1} {:>8.4}",
            r.m, r.estimate, r.std_error, r.theory, r.relative_error
        );
    }
    Ok(())
}
