//! Dense modularity spectrum of one sampled graph against the semicircle,
//! printed as a coarse text histogram.
//!
//! cargo run --release --example spectrum_semicircle

use sbm_spectral::harness::run_spectrum_experiment;
use sbm_spectral::BlockParams;

fn main() -> sbm_spectral::Result<()> {
    let params = BlockParams::new(2000, 2, 48.0, 16.0)?;
    let exp = run_spectrum_experiment(&params, 3, 40)?;
    let s = &exp.summary;
    println!(
        "z1: {:.4} (theory {:.4})",
        s.z1_empirical,
        s.z1_theory.unwrap_or(f64::NAN)
    );
    println!("bulk top: {:.4}, band edge: {:.4}", s.bulk_top, s.band_edge);
    println!(
        "L1 distance to semicircle: {:.4}",
        s.l1_distance.unwrap_or(f64::NAN)
    );
    let peak = exp
        .rows
        .iter()
        .map(|r| r.empirical_density)
        .fold(0.0, f64::max);
    for r in &exp.rows {
        let bar = (60.0 * r.empirical_density / peak).round() as usize;
        let mark = (60.0 * r.theory_density / peak).round() as usize;
        let mut line: Vec<char> = "#"
            .repeat(bar)
            .chars()
            .chain(" ".repeat(62usize.saturating_sub(bar)).chars())
            .collect();
        if mark < line.len() {
            line[mark] = '|';
        }
        println!(
            "{:>8.3} {}",
            r.bin_center,
            line.into_iter().collect::<String>().trim_end()
        );
    }
    Ok(())
}
