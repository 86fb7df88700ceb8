//! Closed-form large-degree predictions for the two-parameter block model:
//! the semicircle bulk of `X = A - <A>`, the outlier eigenvalues of the
//! modularity and adjacency matrices, the detectability threshold and the
//! expected fraction of correctly classified vertices.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sbm::{mean_degree, BlockParams};

fn check_degrees(cin: f64, cout: f64) -> Result<()> {
    for (name, value) in [("cin", cin), ("cout", cout)] {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::NegativeDegree { name, value });
        }
    }
    Ok(())
}

fn check_assortative(cin: f64, cout: f64) -> Result<()> {
    check_degrees(cin, cout)?;
    if cin < cout {
        return Err(Error::Disassortative { cin, cout });
    }
    Ok(())
}

/// Upper edge of the bulk, `sqrt(2 (cin + cout))`.
pub fn band_edge(cin: f64, cout: f64) -> Result<f64> {
    check_degrees(cin, cout)?;
    Ok((2.0 * (cin + cout)).sqrt())
}

/// Eigenvalue density of `X`: `(n / pi) sqrt(2(cin+cout) - z^2) / (cin+cout)`
/// inside the band, zero outside. Integrates to `n`.
pub fn semicircle_density(z: f64, cin: f64, cout: f64, n: usize) -> Result<f64> {
    Ok(n as f64 * semicircle_density_normalized(z, cin, cout)?)
}

/// [`semicircle_density`] per vertex; integrates to 1.
pub fn semicircle_density_normalized(z: f64, cin: f64, cout: f64) -> Result<f64> {
    check_degrees(cin, cout)?;
    let s = cin + cout;
    if s <= 0.0 {
        return Err(Error::ZeroDensity);
    }
    let inside = 2.0 * s - z * z;
    Ok(if inside > 0.0 {
        inside.sqrt() / (PI * s)
    } else {
        0.0
    })
}

/// Leading modularity eigenvalue `(cin - cout)/2 + (cin + cout)/(cin - cout)`.
pub fn z1_theory(cin: f64, cout: f64) -> Result<f64> {
    check_degrees(cin, cout)?;
    let delta = cin - cout;
    if delta == 0.0 {
        return Err(Error::SingularOutlier(cin));
    }
    Ok(0.5 * delta + (cin + cout) / delta)
}

/// Second adjacency eigenvalue `(cin + cout)/2 + 1`, the Perron-like
/// eigenvalue carried by the uniform direction.
pub fn z2_adjacency_theory(cin: f64, cout: f64) -> Result<f64> {
    check_degrees(cin, cout)?;
    Ok(0.5 * (cin + cout) + 1.0)
}

/// `(cin - cout) - sqrt(q [cin + (q - 1) cout])`; positive when the
/// planted groups are detectable from the spectrum.
pub fn detectability_margin(q: usize, cin: f64, cout: f64) -> Result<f64> {
    if q < 2 {
        return Err(Error::TooFewGroups(q));
    }
    check_assortative(cin, cout)?;
    let qf = q as f64;
    Ok((cin - cout) - (qf * (cin + (qf - 1.0) * cout)).sqrt())
}

/// Squared overlap of the leading eigenvector with the planted vector,
/// `[(cin-cout)^2 - 2(cin+cout)] / (cin-cout)^2`, clamped below at 0.
/// Equal degrees give 0.
pub fn alpha_squared(cin: f64, cout: f64) -> Result<f64> {
    check_assortative(cin, cout)?;
    let d2 = (cin - cout).powi(2);
    if d2 == 0.0 {
        return Ok(0.0);
    }
    Ok(((d2 - 2.0 * (cin + cout)) / d2).max(0.0))
}

/// Expected fraction of vertices whose eigenvector sign matches their group:
/// `(1 + erf(sqrt(a / (2 (1 - a))))) / 2` with `a = alpha_squared`.
pub fn expected_accuracy(cin: f64, cout: f64) -> Result<f64> {
    Ok(accuracy_from_alpha_squared(alpha_squared(cin, cout)?))
}

pub fn accuracy_from_alpha_squared(a: f64) -> f64 {
    if a <= 0.0 {
        0.5
    } else if a >= 1.0 {
        1.0
    } else {
        0.5 * (1.0 + erf((a / (2.0 * (1.0 - a))).sqrt()))
    }
}

/// Error function, absolute error below `1e-15`.
///
/// For `|x| <= 3` uses `erf x = 2/sqrt(pi) e^{-x^2} sum_k 2^k x^{2k+1} / (2k+1)!!`
/// (all terms positive, no cancellation); beyond that, the continued
/// fraction for `erfc` evaluated backwards from depth 80.
pub fn erf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x < 0.0 {
        return -erf(-x);
    }
    if x <= 3.0 {
        let x2 = x * x;
        let mut term = x;
        let mut sum = x;
        let mut k = 0.0;
        while term > 1e-17 * sum {
            k += 1.0;
            term *= 2.0 * x2 / (2.0 * k + 1.0);
            sum += term;
        }
        2.0 / PI.sqrt() * (-x2).exp() * sum
    } else if x < 6.0 {
        1.0 - erfc_continued_fraction(x)
    } else {
        1.0
    }
}

fn erfc_continued_fraction(x: f64) -> f64 {
    // erfc x = e^{-x^2}/sqrt(pi) * 1/(x + (1/2)/(x + (2/2)/(x + (3/2)/(x + ...))))
    let mut tail = x;
    for k in (1..=80).rev() {
        tail = x + (k as f64 / 2.0) / tail;
    }
    (-x * x).exp() / PI.sqrt() / tail
}

/// Catalan number `C_m = binom(2m, m) / (m + 1)`, exact. `m <= 35`.
pub fn catalan(m: usize) -> Result<u64> {
    if m > 35 {
        return Err(Error::InvalidArgument(format!(
            "C_{m} does not fit in 64 bits"
        )));
    }
    let mut c: u128 = 1;
    for i in 0..m as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    Ok(c as u64)
}

/// Bundle of predictions for one parameter set. Fields that only make sense
/// for two groups, or that are singular, are `None` (serialized as `null`).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoryPrediction {
    pub n: usize,
    pub q: usize,
    pub cin: f64,
    pub cout: f64,
    pub mean_degree: f64,
    /// `2 sqrt(c)` with `c` the mean degree; equals `sqrt(2(cin+cout))` for q = 2.
    pub band_edge: f64,
    pub z1: Option<f64>,
    pub z2_adjacency: Option<f64>,
    pub detectability_margin: f64,
    pub detectable: bool,
    pub alpha_squared: Option<f64>,
    pub expected_accuracy: Option<f64>,
}

pub fn predict(params: &BlockParams) -> Result<TheoryPrediction> {
    let (cin, cout, q) = (params.cin(), params.cout(), params.q());
    let margin = detectability_margin(q, cin, cout)?;
    let c = mean_degree(params);
    let two_group = q == 2;
    Ok(TheoryPrediction {
        n: params.n(),
        q,
        cin,
        cout,
        mean_degree: c,
        band_edge: 2.0 * c.sqrt(),
        z1: if two_group {
            z1_theory(cin, cout).ok()
        } else {
            None
        },
        z2_adjacency: if two_group {
            Some(z2_adjacency_theory(cin, cout)?)
        } else {
            None
        },
        detectability_margin: margin,
        detectable: margin > 0.0,
        alpha_squared: if two_group {
            Some(alpha_squared(cin, cout)?)
        } else {
            None
        },
        expected_accuracy: if two_group {
            Some(expected_accuracy(cin, cout)?)
        } else {
            None
        },
    })
}
