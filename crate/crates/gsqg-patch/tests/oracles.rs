//! Self-checks of the test-side oracles against known closed forms.

mod common;

use std::f64::consts::PI;

#[test]
fn gamma_known_values() {
    assert!((common::gamma(0.5) - PI.sqrt()).abs() < 1e-13);
    assert!((common::gamma(5.0) - 24.0).abs() < 1e-11);
    assert!((common::gamma(1.5) - 0.5 * PI.sqrt()).abs() < 1e-13);
}

#[test]
fn tanh_sinh_endpoint_singularities() {
    assert!((common::tanh_sinh(|x| x.sqrt(), 0.0, 1.0, 1e-14) - 2.0 / 3.0).abs() < 1e-13);
    assert!((common::tanh_sinh(|x| 1.0 / x.sqrt(), 0.0, 1.0, 1e-14) - 2.0).abs() < 1e-10);
}

#[test]
fn beta_at_alpha_one() {
    // Σ 8/(2i−1), i = 1..j
    let mut sum = 0.0;
    for j in 1..=6 {
        sum += 8.0 / (2.0 * j as f64 - 1.0);
        assert!((common::beta(1.0, j) - sum).abs() < 1e-9 * sum);
    }
}

#[test]
fn line_fit_is_exact_on_a_line() {
    let pts: Vec<(f64, f64)> = (0..5).map(|i| (i as f64, 3.0 - 0.5 * i as f64)).collect();
    let (p, c) = common::fit_line(&pts);
    assert!((p + 0.5).abs() < 1e-14 && (c - 3.0).abs() < 1e-14);
}
