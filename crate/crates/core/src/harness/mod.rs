//! Reproducible experiment drivers emitting CSV tables and JSON summaries.
//!
//! Every table starts with a versioned schema comment (`# sbm-<kind> v1`)
//! followed by a header row. Undefined values are written as `NA`.

mod experiments;
mod sweep;

pub use experiments::{
    moments_to_csv, run_moment_check, run_spectrum_experiment, DensityRow, MomentRow,
    SpectrumExperiment, SpectrumSummary, MAX_MOMENT, MOMENTS_SCHEMA, SPECTRUM_SCHEMA,
};
pub use sweep::{
    run_sweep, ReplicateRecord, RunStatus, SweepConfig, SweepRow, SweepTable, SWEEP_SCHEMA,
};

pub(crate) fn fmt_opt(v: Option<f64>) -> String {
    v.map_or_else(|| "NA".to_string(), |x| x.to_string())
}

pub mod stats {
    /// Mean and standard error of the mean (sample standard deviation over
    /// `sqrt(len)`). Empty input gives `(NaN, NaN)`; one value has zero error.
    pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
        if xs.is_empty() {
            return (f64::NAN, f64::NAN);
        }
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        if xs.len() == 1 {
            return (mean, 0.0);
        }
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        (mean, (var / n).sqrt())
    }

    /// Spearman rank correlation (average ranks for ties).
    pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
        let (rx, ry) = (ranks(x), ranks(y));
        let (mx, _) = mean_stderr(&rx);
        let (my, _) = mean_stderr(&ry);
        let cov: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - mx) * (b - my)).sum();
        let vx: f64 = rx.iter().map(|a| (a - mx).powi(2)).sum();
        let vy: f64 = ry.iter().map(|b| (b - my).powi(2)).sum();
        cov / (vx * vy).sqrt()
    }

    fn ranks(v: &[f64]) -> Vec<f64> {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        idx.sort_by(|&a, &b| v[a].total_cmp(&v[b]));
        let mut out = vec![0.0; v.len()];
        let mut i = 0;
        while i < idx.len() {
            let mut j = i;
            while j + 1 < idx.len() && v[idx[j + 1]] == v[idx[i]] {
                j += 1;
            }
            let avg = (i + j) as f64 / 2.0 + 1.0;
            for &k in &idx[i..=j] {
                out[k] = avg;
            }
            i = j + 1;
        }
        out
    }

}
