use percolab::theory::{bush_bound_k, expected_r, mu, predictions, regime_classify, ModelParams, Regime};
use proptest::prelude::*;

proptest! {
    #[test]
    fn k_is_the_least_sufficient_integer(d in 3u32..12, eta in 0.01f64..2.0) {
        let k = bush_bound_k(d, eta).unwrap() as f64;
        let x = (d - 2) as f64 * eta;
        prop_assert!(k * x > 2.0 - 1e-9);
        prop_assert!((k - 1.0) * x <= 2.0 + 1e-9);
    }

    #[test]
    fn regimes_nest(d in 3u32..12, eta in 0.01f64..2.0, bump in 0.0f64..1.0) {
        prop_assert!(regime_classify(d, eta + bump) >= regime_classify(d, eta));
    }

    #[test]
    fn mu_sums_below_n(n in 10usize..1_000_000, d in 3u32..8, alpha in 0.3f64..2.0) {
        // for small deletion probability sum_j mu_j ~ n (1 + p)^d
        let p = ModelParams::new(n, d, alpha, alpha).unwrap();
        let total: f64 = (0..=d).map(|j| mu(j, &p).unwrap()).sum();
        let q = (n as f64).powf(-alpha);
        prop_assert!((total / n as f64 - (1.0 + q).powi(d as i32)).abs() < 1e-9 * (1.0 + q).powi(d as i32));
    }
}

#[test]
fn regime_boundaries() {
    assert_eq!(regime_classify(4, 1.0 / 3.0), Regime::C);
    assert_eq!(regime_classify(4, 1.0 / 3.0 - 1e-6), Regime::B);
    assert_eq!(regime_classify(4, 1.0 / 6.0), Regime::A);
    assert_eq!(regime_classify(4, 1.0 / 6.0 + 1e-6), Regime::B);
}

#[test]
fn prediction_bundle() {
    let p = ModelParams::new(100_000, 4, 0.5, 0.5).unwrap();
    let pr = predictions(&p, &[2, 3]).unwrap();
    assert_eq!(pr.k, 3);
    assert_eq!(pr.regime, Regime::C);
    assert!((pr.mu[2] - 6.0).abs() < 1e-9);
    assert!((pr.expected_r.value - expected_r(100_000, 0.5).value).abs() < 1e-12);
    assert_eq!(pr.expected_deg2_paths.len(), 2);
}
