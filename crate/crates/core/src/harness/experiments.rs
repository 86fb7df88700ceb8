use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    default_range, dense_full_spectrum, moment_trace_estimate, spectral_histogram,
    CenteredOperator, ModularityErOperator, DEFAULT_DENSE_LIMIT,
};
use crate::sbm::{mean_degree, sample_graph, BlockParams, Partition};
use crate::theory;

pub const SPECTRUM_SCHEMA: &str = "# sbm-spectrum v1";
pub const MOMENTS_SCHEMA: &str = "# sbm-moments v1";

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DensityRow {
    pub bin_center: f64,
    pub empirical_density: f64,
    pub theory_density: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumSummary {
    pub n: usize,
    pub cin: f64,
    pub cout: f64,
    pub seed: u64,
    pub bins: usize,
    pub z1_empirical: f64,
    pub z1_theory: Option<f64>,
    /// Second-largest eigenvalue: top of the empirical bulk.
    pub bulk_top: f64,
    pub band_edge: f64,
    pub l1_distance: Option<f64>,
    pub warning: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectrumExperiment {
    pub rows: Vec<DensityRow>,
    pub summary: SpectrumSummary,
}

/// Full modularity spectrum of one sampled graph against the semicircle.
///
/// The largest eigenvalue is reported separately and left out of the
/// histogram; the rest are binned over `±1.2` band edges and compared
/// with the normalized semicircle at bin centers.
pub fn run_spectrum_experiment(
    params: &BlockParams,
    seed: u64,
    bins: usize,
) -> Result<SpectrumExperiment> {
    if params.n() > DEFAULT_DENSE_LIMIT {
        return Err(Error::DenseLimitExceeded {
            n: params.n(),
            limit: DEFAULT_DENSE_LIMIT,
        });
    }
    let truth = Partition::canonical(params.n(), params.q())?;
    let graph = sample_graph(params, &truth, seed)?;
    let op = ModularityErOperator::new(&graph, None)?;
    let spectrum = dense_full_spectrum(&op, DEFAULT_DENSE_LIMIT, false)?;
    let (cin, cout) = (params.cin(), params.cout());
    let band_edge = 2.0 * mean_degree(params).sqrt();
    let mut summary = SpectrumSummary {
        n: params.n(),
        cin,
        cout,
        seed,
        bins,
        z1_empirical: spectrum.eigenvalues[0],
        z1_theory: if params.q() == 2 {
            theory::z1_theory(cin, cout).ok()
        } else {
            None
        },
        bulk_top: spectrum.eigenvalues.get(1).copied().unwrap_or(f64::NAN),
        band_edge,
        l1_distance: None,
        warning: None,
    };
    if graph.m() == 0 || band_edge == 0.0 {
        summary.warning =
            Some("degenerate input: graph has no edges, the band has collapsed to 0".into());
        return Ok(SpectrumExperiment {
            rows: Vec::new(),
            summary,
        });
    }
    let bulk = &spectrum.eigenvalues[1..];
    let hist = spectral_histogram(bulk, bins, default_range(bulk, Some(band_edge)))?;
    // Per-vertex semicircle with the same mean degree; for q = 2 this is the
    // normalized density with cin + cout = 2c.
    let c = mean_degree(params);
    let density = |z: f64| theory::semicircle_density_normalized(z, c, c).expect("c > 0");
    summary.l1_distance = Some(hist.l1_distance(density));
    let rows = hist
        .centers
        .iter()
        .zip(&hist.densities)
        .map(|(&bin_center, &empirical_density)| DensityRow {
            bin_center,
            empirical_density,
            theory_density: density(bin_center),
        })
        .collect();
    Ok(SpectrumExperiment { rows, summary })
}

impl SpectrumExperiment {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{SPECTRUM_SCHEMA}").unwrap();
        writeln!(out, "bin_center,empirical_density,theory_density").unwrap();
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{}",
                r.bin_center, r.empirical_density, r.theory_density
            )
            .unwrap();
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentRow {
    pub m: usize,
    pub estimate: f64,
    pub std_error: f64,
    pub theory: f64,
    pub relative_error: f64,
}

/// Largest moment index accepted by [`run_moment_check`].
pub const MAX_MOMENT: usize = 6;

/// Stochastic estimates of `Tr X^(2m)` for `X = A - <A>` against
/// `n c^m C_m`, `m = 0..=m_max`.
pub fn run_moment_check(
    params: &BlockParams,
    seed: u64,
    m_max: usize,
    n_probes: usize,
) -> Result<Vec<MomentRow>> {
    if m_max > MAX_MOMENT {
        return Err(Error::InvalidArgument(format!(
            "m_max = {m_max} exceeds {MAX_MOMENT}"
        )));
    }
    let truth = Partition::canonical(params.n(), params.q())?;
    let graph = sample_graph(params, &truth, seed)?;
    let op = CenteredOperator::new(&graph, params, &truth)?;
    let c = mean_degree(params);
    (0..=m_max)
        .map(|m| {
            let est = moment_trace_estimate(&op, m, n_probes, seed)?;
            let theory = params.n() as f64 * c.powi(m as i32) * theory::catalan(m)? as f64;
            Ok(MomentRow {
                m,
                estimate: est.estimate,
                std_error: est.std_error,
                theory,
                relative_error: (est.estimate - theory).abs() / theory.abs(),
            })
        })
        .collect()
}

pub fn moments_to_csv(rows: &[MomentRow]) -> String {
    let mut out = String::new();
    writeln!(out, "{MOMENTS_SCHEMA}").unwrap();
    writeln!(out, "m,estimate,std_error,theory,relative_error").unwrap();
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.m, r.estimate, r.std_error, r.theory, r.relative_error
        )
        .unwrap();
    }
    out
}
