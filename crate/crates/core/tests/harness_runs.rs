use sbm_spectral::detect::{accuracy, spectral_partition_q2, DetectOptions, DEFAULT_SEPARATION};
use sbm_spectral::harness::{
    run_moment_check, run_spectrum_experiment, run_sweep, stats, SweepConfig,
};
use sbm_spectral::sbm::{make_planted_partition, sample_graph};
use sbm_spectral::BlockParams;

fn config(n: usize, deltas: Vec<f64>, seeds: usize) -> SweepConfig {
    SweepConfig {
        n,
        q: 2,
        mean_degree: 8.0,
        deltas,
        seeds_per_point: seeds,
        seed_base: 10,
        seed_stride: 1000,
        separation: DEFAULT_SEPARATION,
    }
}

/// Welford's running mean and variance, independent of the two-pass sums.
fn welford(xs: &[f64]) -> (f64, f64) {
    let (mut mean, mut m2) = (0.0, 0.0);
    for (k, &x) in xs.iter().enumerate() {
        let d = x - mean;
        mean += d / (k + 1) as f64;
        m2 += d * (x - mean);
    }
    let var = m2 / (xs.len() - 1) as f64;
    (mean, (var / xs.len() as f64).sqrt())
}

#[test]
fn rows_aggregate_the_replicates() {
    let cfg = config(2000, vec![6.0, 10.0], 4);
    let table = run_sweep(&cfg).unwrap();
    assert_eq!(table.rows.len(), 2);
    assert_eq!(table.replicates.len(), 8);
    for (p, row) in table.rows.iter().enumerate() {
        let (cin, cout) = cfg.degrees(row.delta);
        let params = BlockParams::new(2000, 2, cin, cout).unwrap();
        let (_, truth) = make_planted_partition(2000, 2, cin, cout).unwrap();
        let accs: Vec<f64> = (0..4)
            .map(|r| {
                let seed = cfg.seed_for(p, r);
                let g = sample_graph(&params, &truth, seed).unwrap();
                let found = spectral_partition_q2(&g, &DetectOptions::with_seed(seed)).unwrap();
                accuracy(&found.labels, &truth).unwrap()
            })
            .collect();
        let (mean, se) = welford(&accs);
        assert!((row.mean_accuracy - mean).abs() < 1e-12);
        assert!((row.accuracy_stderr - se).abs() < 1e-12);
        assert!(row.accuracy_stderr >= 0.0);
        assert_eq!(row.n_seeds, 4);
    }
}

#[test]
fn sweep_is_deterministic() {
    let cfg = config(1500, vec![3.0, 9.0], 3);
    assert_eq!(
        run_sweep(&cfg).unwrap().to_csv(),
        run_sweep(&cfg).unwrap().to_csv()
    );
}

#[test]
fn single_point_near_theory() {
    let table = run_sweep(&config(10_000, vec![8.0], 5)).unwrap();
    let row = &table.rows[0];
    assert_eq!(row.z1_theory, Some(6.0));
    let theory = row.expected_accuracy_theory.unwrap();
    assert!((theory - 0.8413).abs() < 1e-4);
    assert!(
        (row.mean_accuracy - theory).abs() < 0.05,
        "{}",
        row.mean_accuracy
    );
}

#[test]
fn accuracy_rises_with_delta() {
    let table = run_sweep(&config(5000, vec![2.0, 4.0, 6.0, 8.0, 10.0, 12.0, 14.0], 3)).unwrap();
    let x: Vec<f64> = table.rows.iter().map(|r| r.delta).collect();
    let y: Vec<f64> = table.rows.iter().map(|r| r.mean_accuracy).collect();
    assert!(stats::spearman(&x, &y) > 0.9, "{y:?}");
}

#[test]
fn null_sweep_point_near_half() {
    let table = run_sweep(&config(4000, vec![0.0], 4)).unwrap();
    assert!((table.rows[0].mean_accuracy - 0.5).abs() < 0.05);
}

#[test]
fn spectrum_without_structure_has_no_outlier() {
    let exp =
        run_spectrum_experiment(&BlockParams::new(2000, 2, 32.0, 32.0).unwrap(), 4, 40).unwrap();
    let s = &exp.summary;
    assert!(
        s.z1_empirical <= 1.05 * s.band_edge,
        "{} vs {}",
        s.z1_empirical,
        s.band_edge
    );
}

#[test]
fn spectrum_outlier_near_theory() {
    let exp =
        run_spectrum_experiment(&BlockParams::new(2000, 2, 48.0, 16.0).unwrap(), 2, 60).unwrap();
    let s = &exp.summary;
    assert!((s.z1_empirical - 18.0).abs() < 0.03 * 18.0);
    assert_eq!(exp.rows.len(), 60);
}

#[test]
fn moment_rows_cover_requested_range() {
    let rows = run_moment_check(&BlockParams::new(1000, 2, 24.0, 8.0).unwrap(), 1, 2, 10).unwrap();
    assert_eq!(rows.iter().map(|r| r.m).collect::<Vec<_>>(), vec![0, 1, 2]);
    assert_eq!(rows[2].theory, 1000.0 * 256.0 * 2.0);
}
