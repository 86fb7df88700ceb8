//! Small accuracy sweep through the transition; prints the sweep CSV.
//!
//! cargo run --release --example accuracy_sweep

use sbm_spectral::harness::{run_sweep, SweepConfig};

fn main() -> sbm_spectral::Result<()> {
    let config = SweepConfig {
        n: 5000,
        q: 2,
        mean_degree: 8.0,
        deltas: vec![2.0, 4.0, 6.0, 8.0, 10.0, 12.0],
        seeds_per_point: 4,
        seed_base: 0,
        seed_stride: 1000,
        separation: sbm_spectral::detect::DEFAULT_SEPARATION,
    };
    print!("{}", run_sweep(&config)?.to_csv());
    Ok(())
}
