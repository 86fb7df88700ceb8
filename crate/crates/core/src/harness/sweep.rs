use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{fmt_opt, stats};
use crate::detect::{accuracy, spectral_partition_general, DetectOptions, DEFAULT_SEPARATION};
use crate::error::{Error, Result};
use crate::sbm::{make_planted_partition, sample_graph, BlockParams};
use crate::theory;

pub const SWEEP_SCHEMA: &str = "# sbm-sweep v1";

fn default_stride() -> u64 {
    1000
}

fn default_separation() -> f64 {
    DEFAULT_SEPARATION
}

/// Accuracy sweep over `delta = cin - cout` at fixed mean degree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub n: usize,
    pub q: usize,
    /// Mean degree `c`; each point has `cin + (q-1) cout = q c`.
    pub mean_degree: f64,
    pub deltas: Vec<f64>,
    pub seeds_per_point: usize,
    #[serde(default)]
    pub seed_base: u64,
    #[serde(default = "default_stride")]
    pub seed_stride: u64,
    #[serde(default = "default_separation")]
    pub separation: f64,
}

impl SweepConfig {
    /// `(cin, cout)` for a given `delta`.
    pub fn degrees(&self, delta: f64) -> (f64, f64) {
        let q = self.q as f64;
        (
            self.mean_degree + (q - 1.0) * delta / q,
            self.mean_degree - delta / q,
        )
    }

    pub fn params(&self, delta: f64) -> Result<BlockParams> {
        let (cin, cout) = self.degrees(delta);
        if delta < 0.0 || cout < 0.0 {
            return Err(Error::InvalidArgument(format!(
                "delta = {delta} gives cin = {cin}, cout = {cout}; need cin >= cout >= 0"
            )));
        }
        BlockParams::new(self.n, self.q, cin, cout)
    }

    pub fn validate(&self) -> Result<()> {
        if self.seeds_per_point == 0 {
            return Err(Error::InvalidArgument(
                "seeds_per_point must be positive".into(),
            ));
        }
        for &d in &self.deltas {
            self.params(d)?;
        }
        Ok(())
    }

    pub fn seed_for(&self, point: usize, replicate: usize) -> u64 {
        self.seed_base + point as u64 * self.seed_stride + replicate as u64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Ok,
    SolverFailed,
}

/// One (grid point, replicate) run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReplicateRecord {
    pub point: usize,
    pub replicate: usize,
    pub seed: u64,
    pub status: RunStatus,
    pub accuracy: Option<f64>,
    pub z1_empirical: Option<f64>,
    pub detected: Option<bool>,
    pub iterations: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub cin: f64,
    pub cout: f64,
    pub delta: f64,
    pub mean_accuracy: f64,
    pub accuracy_stderr: f64,
    pub mean_z1_empirical: f64,
    pub z1_theory: Option<f64>,
    pub band_edge: f64,
    pub expected_accuracy_theory: Option<f64>,
    pub detected_fraction: f64,
    pub n_seeds: usize,
    pub n_failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub rows: Vec<SweepRow>,
    pub replicates: Vec<ReplicateRecord>,
}

fn run_one(
    config: &SweepConfig,
    point: usize,
    replicate: usize,
    delta: f64,
) -> Result<ReplicateRecord> {
    let params = config.params(delta)?;
    let (_, truth) = make_planted_partition(params.n(), params.q(), params.cin(), params.cout())?;
    let seed = config.seed_for(point, replicate);
    let graph = sample_graph(&params, &truth, seed)?;
    let opts = DetectOptions {
        separation: config.separation,
        ..DetectOptions::with_seed(seed)
    };
    let mut record = ReplicateRecord {
        point,
        replicate,
        seed,
        status: RunStatus::Ok,
        accuracy: None,
        z1_empirical: None,
        detected: None,
        iterations: 0,
    };
    match spectral_partition_general(&graph, config.q, &opts) {
        Ok(found) => {
            record.accuracy = Some(accuracy(&found.labels, &truth)?);
            record.z1_empirical = Some(found.leading_eigenvalue);
            record.detected = Some(found.detected);
            record.iterations = found.iterations;
        }
        Err(Error::NotConverged { iterations, .. }) => {
            record.status = RunStatus::SolverFailed;
            record.iterations = iterations;
        }
        Err(e) => return Err(e),
    }
    Ok(record)
}

/// Runs every (point, replicate) pair on the current rayon pool and
/// aggregates in (point, replicate) order.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepTable> {
    config.validate()?;
    let tasks: Vec<(usize, usize, f64)> = config
        .deltas
        .iter()
        .enumerate()
        .flat_map(|(p, &d)| (0..config.seeds_per_point).map(move |r| (p, r, d)))
        .collect();
    let replicates = tasks
        .par_iter()
        .map(|&(p, r, d)| run_one(config, p, r, d))
        .collect::<Result<Vec<_>>>()?;

    let mut rows = Vec::with_capacity(config.deltas.len());
    for (p, &delta) in config.deltas.iter().enumerate() {
        let recs: Vec<&ReplicateRecord> = replicates.iter().filter(|r| r.point == p).collect();
        let accs: Vec<f64> = recs.iter().filter_map(|r| r.accuracy).collect();
        let z1s: Vec<f64> = recs.iter().filter_map(|r| r.z1_empirical).collect();
        let detected = recs.iter().filter(|r| r.detected == Some(true)).count();
        let (mean_accuracy, accuracy_stderr) = stats::mean_stderr(&accs);
        let (cin, cout) = config.degrees(delta);
        let q2 = config.q == 2;
        rows.push(SweepRow {
            cin,
            cout,
            delta,
            mean_accuracy,
            accuracy_stderr,
            mean_z1_empirical: stats::mean_stderr(&z1s).0,
            z1_theory: if q2 {
                theory::z1_theory(cin, cout).ok()
            } else {
                None
            },
            band_edge: 2.0 * config.mean_degree.sqrt(),
            expected_accuracy_theory: if q2 && delta > 0.0 {
                theory::expected_accuracy(cin, cout).ok()
            } else {
                None
            },
            detected_fraction: if accs.is_empty() {
                f64::NAN
            } else {
                detected as f64 / accs.len() as f64
            },
            n_seeds: recs.len(),
            n_failed: recs
                .iter()
                .filter(|r| r.status == RunStatus::SolverFailed)
                .count(),
        });
    }
    Ok(SweepTable { rows, replicates })
}

impl SweepTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{SWEEP_SCHEMA}").unwrap();
        writeln!(
            out,
            "delta,cin,cout,n_seeds,n_failed,status,mean_accuracy,accuracy_stderr,mean_z1_empirical,z1_theory,band_edge,expected_accuracy_theory,detected_fraction"
        )
        .unwrap();
        for r in &self.rows {
            let status = match r.n_failed {
                0 => "ok",
                f if f == r.n_seeds => "failed",
                _ => "partial",
            };
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{},{},{}",
                r.delta,
                r.cin,
                r.cout,
                r.n_seeds,
                r.n_failed,
                status,
                r.mean_accuracy,
                r.accuracy_stderr,
                r.mean_z1_empirical,
                fmt_opt(r.z1_theory),
                r.band_edge,
                fmt_opt(r.expected_accuracy_theory),
                r.detected_fraction
            )
            .unwrap();
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(deltas: Vec<f64>) -> SweepConfig {
        SweepConfig {
            n: 400,
            q: 2,
            mean_degree: 10.0,
            deltas,
            seeds_per_point: 2,
            seed_base: 5,
            seed_stride: 100,
            separation: DEFAULT_SEPARATION,
        }
    }

    #[test]
    fn empty_grid_is_empty_table() {
        let t = run_sweep(&config(vec![])).unwrap();
        assert!(t.rows.is_empty());
        assert_eq!(t.to_csv().lines().count(), 2);
    }

    #[test]
    fn degrees_hold_mean_fixed() {
        let c = config(vec![]);
        assert_eq!(c.degrees(8.0), (14.0, 6.0));
        let c4 = SweepConfig { q: 4, ..c };
        let (cin, cout) = c4.degrees(8.0);
        assert_eq!(cin - cout, 8.0);
        assert_eq!(cin + 3.0 * cout, 40.0);
    }

    #[test]
    fn invalid_points_rejected() {
        assert!(run_sweep(&config(vec![-1.0])).is_err());
        assert!(run_sweep(&config(vec![25.0])).is_err());
        assert!(run_sweep(&SweepConfig {
            seeds_per_point: 0,
            ..config(vec![1.0])
        })
        .is_err());
    }

    #[test]
    fn zero_delta_has_undefined_theory() {
        let t = run_sweep(&config(vec![0.0])).unwrap();
        let row = &t.rows[0];
        assert_eq!(row.z1_theory, None);
        assert_eq!(row.expected_accuracy_theory, None);
        assert!(t.to_csv().lines().nth(2).unwrap().contains(",NA,"));
    }

    #[test]
    fn seeds_follow_stride() {
        let c = config(vec![]);
        assert_eq!(c.seed_for(0, 0), 5);
        assert_eq!(c.seed_for(3, 1), 306);
    }
}
