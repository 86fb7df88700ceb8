//! Closed-form predictions along a cin - cout sweep at mean degree 8.
//!
//! cargo run --release --example theory_curve

use sbm_spectral::theory::{
    alpha_squared, band_edge, detectability_margin, expected_accuracy, z1_theory,
};

fn main() -> sbm_spectral::Result<()> {
    let c = 8.0;
    println!(
        "{:>6} {:>6} {:>6} {:>8} {:>8} {:>8} {:>8}",
        "delta", "cin", "cout", "edge", "z1", "margin", "acc"
    );
    for step in 1..=14 {
        let delta = step as f64;
        let (cin, cout) = (c + delta / 2.0, c - delta / 2.0);
        let edge = band_edge(cin, cout)?;
        let z1 = z1_theory(cin, cout)?;
        let margin = detectability_margin(2, cin, cout)?;
        let acc = expected_accuracy(cin, cout)?;
        let flag = if alpha_squared(cin, cout)? > 0.0 {
            ""
        } else {
            "  (undetectable)"
        };
        println!("{delta:>6.1} {cin:>6.1} {cout:>6.1} {edge:>8.4} {z1:>8.4} {margin:>8.4} {acc:>8.4}{flag}");
    }
    Ok(())
}
