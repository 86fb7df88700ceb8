use rand::Rng as _;
use serde::Serialize;

use super::operator::{dot, LinearOperator};
use crate::error::{Error, Result};
use crate::rng::{self, tag};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub n_probes: usize,
}

/// Hutchinson estimate of `Tr(Op^(2 m_power))`.
///
/// Each Rademacher probe `z` contributes `z^T Op^(2m) z = ||Op^m z||^2`, so
/// only `m_power` applications per probe are needed. With `m_power = 0`
/// every probe returns exactly `n`.
pub fn moment_trace_estimate(
    op: &dyn LinearOperator,
    m_power: usize,
    n_probes: usize,
    seed: u64,
) -> Result<TraceEstimate> {
    if n_probes == 0 {
        return Err(Error::InvalidArgument("need at least one probe".into()));
    }
    if !op.is_symmetric() {
        return Err(Error::InvalidArgument("operator is not symmetric".into()));
    }
    let n = op.dim();
    let mut rng = rng::stream(seed, tag::PROBES);
    let mut x = vec![0.0; n];
    let mut y = vec![0.0; n];
    let samples: Vec<f64> = (0..n_probes)
        .map(|_| {
            x.iter_mut()
                .for_each(|v| *v = if rng.gen::<bool>() { 1.0 } else { -1.0 });
            for _ in 0..m_power {
                op.apply_unchecked(&x, &mut y);
                std::mem::swap(&mut x, &mut y);
            }
            dot(&x, &x)
        })
        .collect();
    let mean = samples.iter().sum::<f64>() / n_probes as f64;
    let std_error = if n_probes > 1 {
        let var = samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (n_probes - 1) as f64;
        (var / n_probes as f64).sqrt()
    } else {
        0.0
    };
    Ok(TraceEstimate {
        estimate: mean,
        std_error,
        n_probes,
    })
}
