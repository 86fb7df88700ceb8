use proptest::prelude::*;

use sbm_spectral::theory::{
    alpha_squared, band_edge, detectability_margin, expected_accuracy, predict, semicircle_density,
    semicircle_density_normalized, z1_theory,
};
use sbm_spectral::BlockParams;

#[test]
fn normalized_semicircle_integrates_to_one() {
    for (cin, cout) in [(12.0, 4.0), (48.0, 16.0), (3.0, 0.5)] {
        let edge = band_edge(cin, cout).unwrap();
        let points = 10_000;
        // midpoint rule on x = edge sin(t) removes the square-root endpoint
        let dt = std::f64::consts::PI / points as f64;
        let total: f64 = (0..points)
            .map(|k| {
                let t = -std::f64::consts::FRAC_PI_2 + (k as f64 + 0.5) * dt;
                semicircle_density_normalized(edge * t.sin(), cin, cout).unwrap()
                    * edge
                    * t.cos()
                    * dt
            })
            .sum();
        assert!((total - 1.0).abs() < 1e-6, "{total}");
    }
}

#[test]
fn unnormalized_density_scales_with_n() {
    let a = semicircle_density(1.0, 12.0, 4.0, 1000).unwrap();
    let b = semicircle_density_normalized(1.0, 12.0, 4.0).unwrap();
    assert!((a - 1000.0 * b).abs() < 1e-9);
}

proptest! {
    #[test]
    fn outlier_touches_edge_exactly_at_threshold(s in 0.5f64..200.0) {
        // at delta^2 = 2S the outlier sits on the band edge, elsewhere above it
        let delta = (2.0 * s).sqrt();
        let (cin, cout) = ((s + delta) / 2.0, (s - delta) / 2.0);
        prop_assume!(cout >= 0.0);
        let z1 = z1_theory(cin, cout).unwrap();
        let edge = band_edge(cin, cout).unwrap();
        prop_assert!((z1 - edge).abs() < 1e-9 * edge);
        prop_assert!(detectability_margin(2, cin, cout).unwrap().abs() < 1e-9 * edge);
    }

    #[test]
    fn outlier_never_below_edge(cout in 0.0f64..50.0, delta in 0.01f64..50.0) {
        let cin = cout + delta;
        prop_assert!(z1_theory(cin, cout).unwrap() >= band_edge(cin, cout).unwrap() - 1e-9);
    }

    #[test]
    fn accuracy_increases_with_delta(c in 2.0f64..40.0, f1 in 0.0f64..1.0, f2 in 0.0f64..1.0) {
        let (lo, hi) = (f1.min(f2), f1.max(f2));
        let acc = |f: f64| expected_accuracy(c + f * c, c - f * c).unwrap();
        prop_assert!(acc(hi) >= acc(lo) - 1e-15);
        prop_assert!((0.5..=1.0).contains(&acc(lo)));
    }

    #[test]
    fn alpha_squared_positive_iff_margin_positive(c in 2.0f64..40.0, f in 0.01f64..1.0) {
        let (cin, cout) = (c + f * c, c - f * c);
        let margin = detectability_margin(2, cin, cout).unwrap();
        let a2 = alpha_squared(cin, cout).unwrap();
        prop_assert!((0.0..1.0).contains(&a2));
        if margin.abs() > 1e-9 {
            prop_assert_eq!(a2 > 0.0, margin > 0.0);
        }
    }

    #[test]
    fn general_margin_reduces_for_two_groups(cout in 0.0f64..50.0, delta in 0.0f64..50.0) {
        let cin = cout + delta;
        let general = detectability_margin(2, cin, cout).unwrap();
        let direct = delta - (2.0 * (cin + cout)).sqrt();
        prop_assert!((general - direct).abs() < 1e-12);
    }
}

#[test]
fn prediction_bundle_consistent() {
    let p = predict(&BlockParams::new(10_000, 2, 24.0, 8.0).unwrap()).unwrap();
    assert_eq!(p.z1, Some(10.0));
    assert_eq!(p.z2_adjacency, Some(17.0));
    assert!(p.detectable);
    assert!((p.band_edge - 8.0).abs() < 1e-12);
    let q4 = predict(&BlockParams::new(8192, 4, 40.0, 8.0).unwrap()).unwrap();
    assert_eq!(q4.z1, None);
    assert_eq!(q4.expected_accuracy, None);
    assert!((q4.detectability_margin - (32.0 - (4.0f64 * 64.0).sqrt())).abs() < 1e-12);
}
