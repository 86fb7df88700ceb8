use serde::Serialize;

use crate::error::{Error, Result};

/// Normalized histogram: `sum(density * width) == 1` over the values that
/// fall inside the range.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Histogram {
    pub lo: f64,
    pub hi: f64,
    pub width: f64,
    pub centers: Vec<f64>,
    pub densities: Vec<f64>,
    /// Values outside `[lo, hi]`, not counted.
    pub outside: usize,
}

impl Histogram {
    /// `sum |density_i - f(center_i)| * width`.
    pub fn l1_distance(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.centers
            .iter()
            .zip(&self.densities)
            .map(|(&c, &d)| (d - f(c)).abs() * self.width)
            .sum()
    }
}

/// Range for spectral histograms: `±1.2 band_edge` when the band edge is
/// known, else the span of the data.
pub fn default_range(values: &[f64], band_edge: Option<f64>) -> (f64, f64) {
    match band_edge {
        Some(edge) => (-1.2 * edge, 1.2 * edge),
        None => values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
                (lo.min(v), hi.max(v))
            }),
    }
}

pub fn spectral_histogram(values: &[f64], bins: usize, range: (f64, f64)) -> Result<Histogram> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    if bins == 0 {
        return Err(Error::InvalidArgument("bins must be at least 1".into()));
    }
    let (lo, hi) = range;
    if !lo.is_finite() || !hi.is_finite() || hi <= lo {
        return Err(Error::ZeroWidthRange);
    }
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    let mut outside = 0;
    for &v in values {
        if !(lo..=hi).contains(&v) {
            outside += 1;
            continue;
        }
        let idx = (((v - lo) / width) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    let inside = values.len() - outside;
    if inside == 0 {
        return Err(Error::EmptyInput);
    }
    let norm = inside as f64 * width;
    Ok(Histogram {
        lo,
        hi,
        width,
        centers: (0..bins).map(|b| lo + (b as f64 + 0.5) * width).collect(),
        densities: counts.iter().map(|&c| c as f64 / norm).collect(),
        outside,
    })
}
