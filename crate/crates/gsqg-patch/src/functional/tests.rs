use std::f64::consts::PI;

use super::*;
use crate::kernels::kernel_moments;
use crate::solver::{omega_star, w_star};

fn quad() -> QuadratureScheme {
    QuadratureScheme::new(64, 128, WindowPolicy::Corrected).unwrap()
}

fn shape(alpha: f64, mode: Mode, eps: f64, f: FourierCosSeries) -> BoundaryShape {
    BoundaryShape::new(PatchGeometry::new(alpha, 1.0, mode, eps).unwrap(), f).unwrap()
}

fn sample_f() -> FourierCosSeries {
    FourierCosSeries::new(vec![0.3, -0.1, 0.05, 0.0, 0.01, 0.0]).unwrap()
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

#[test]
fn geometry_guards() {
    assert!(PatchGeometry::corotating(2.0, 1.0, 2, 0.1).is_err());
    assert!(PatchGeometry::corotating(1.0, 0.0, 2, 0.1).is_err());
    assert!(PatchGeometry::corotating(1.0, 1.0, 1, 0.1).is_err());
    assert!(PatchGeometry::corotating(1.0, 1.0, 2, 1.5).is_err());
    assert!(PatchGeometry::corotating(1.0, 1.0, 2, -0.1).is_ok());
    assert!(QuadratureScheme::new(64, 96, WindowPolicy::Plain).is_err());
    assert!(QuadratureScheme::new(6, 6, WindowPolicy::Plain).is_err());
}

#[test]
fn degenerate_radius_is_rejected() {
    let g = PatchGeometry::corotating(1.0, 1.0, 2, 0.5).unwrap();
    let f = FourierCosSeries::mode(4, 2, -10.0).unwrap();
    assert!(matches!(BoundaryShape::new(g, f), Err(Error::DegenerateBoundary { .. })));
}

#[test]
fn zero_eps_and_mode_mismatch() {
    let s = shape(1.0, Mode::Corotating { m: 2 }, 0.0, FourierCosSeries::zeros(4));
    assert!(matches!(eval_G(&s, 0.0, &quad()), Err(Error::ZeroEps)));
    let s = shape(1.0, Mode::Travelling, 0.05, FourierCosSeries::zeros(4));
    assert!(eval_G(&s, 0.0, &quad()).is_err());
    assert!(eval_H(&s, 0.0, &quad()).is_ok());
}

#[test]
fn aliasing_guard() {
    let s = shape(1.0, Mode::Corotating { m: 2 }, 0.05, FourierCosSeries::zeros(20));
    assert!(matches!(eval_G(&s, 0.0, &quad()), Err(Error::Aliasing { .. })));
}

#[test]
fn output_is_odd() {
    for (alpha, mode) in [(1.0, Mode::Corotating { m: 3 }), (1.5, Mode::Travelling), (0.5, Mode::Corotating { m: 2 })] {
        let s = shape(alpha, mode, 0.1, sample_f());
        let e = eval_mode(&s, 0.2, &QuadratureScheme::new(256, 256, WindowPolicy::Corrected).unwrap(), mode == Mode::Travelling)
            .unwrap();
        assert!(e.leakage < 1e-10, "{alpha} {mode:?}: {}", e.leakage);
    }
}

#[test]
fn affine_in_speed() {
    for mode in [Mode::Corotating { m: 2 }, Mode::Travelling] {
        let s = shape(1.3, mode, 0.08, sample_f());
        let t = mode == Mode::Travelling;
        let g0 = eval_mode(&s, 0.0, &quad(), t).unwrap().grid;
        let g1 = eval_mode(&s, 1.0, &quad(), t).unwrap().grid;
        let g2 = eval_mode(&s, 2.0, &quad(), t).unwrap().grid;
        let mid: Vec<f64> = g0.iter().zip(&g2).map(|(a, b)| 0.5 * (a + b)).collect();
        assert!(max_diff(&mid, &g1) < 1e-12);
    }
}

#[test]
fn point_vortex_roots() {
    for alpha in [1.0, 1.5] {
        for m in [2, 3] {
            let g = PatchGeometry::corotating(alpha, 1.0, m, 0.0).unwrap();
            let b = eval_G_limit(omega_star(alpha, 1.0, m).unwrap(), &FourierCosSeries::zeros(4), &g).unwrap();
            assert!(b.norm() < 1e-15);
        }
        let g = PatchGeometry::travelling(alpha, 1.0, 0.0).unwrap();
        let b = eval_G_limit(w_star(alpha, 1.0).unwrap(), &FourierCosSeries::zeros(4), &g).unwrap();
        assert!(b.norm() < 1e-15);
    }
}

#[test]
fn zero_eps_quadrature_matches_limit() {
    for (alpha, mode) in [(1.0, Mode::Corotating { m: 2 }), (1.5, Mode::Corotating { m: 3 }), (1.25, Mode::Travelling)] {
        let g = PatchGeometry::new(alpha, 1.0, mode, 0.0).unwrap();
        let f = sample_f();
        let ev = Evaluator::new(&g, &QuadratureScheme::new(128, 256, WindowPolicy::Corrected).unwrap()).unwrap();
        let q = ev.evaluate(0.0, &f, 0.1).unwrap().series;
        let l = eval_G_limit(0.1, &f, &g).unwrap();
        assert!(max_diff(q.coeffs(), l.coeffs()) < 1e-10, "{alpha} {mode:?}");
    }
}

#[test]
fn converges_to_limit_with_eps() {
    let f = sample_f();
    let mode = Mode::Corotating { m: 2 };
    let err = |eps: f64| {
        let s = shape(1.5, mode, eps, f.clone());
        let e = eval_G(&s, -0.1, &quad()).unwrap().series;
        let l = eval_G_limit(-0.1, &f, &s.geometry).unwrap();
        max_diff(e.coeffs(), l.coeffs())
    };
    let (a, b) = (err(0.02), err(0.01));
    assert!(b < a && a < 1e-2);
}

#[test]
fn gateaux_analytic_matches_fd() {
    let s = shape(1.2, Mode::Corotating { m: 3 }, 0.05, FourierCosSeries::mode(8, 2, 0.01).unwrap());
    let h = FourierCosSeries::new(vec![1.0, 0.5, -0.2, 0.1, 0.0, 0.0, 0.05]).unwrap();
    let q = quad();
    let a = gateaux(&s, -0.2, &h, GateauxMethod::Analytic, &q).unwrap();
    for t in [1e-5, 1e-6] {
        let fd = gateaux(&s, -0.2, &h, GateauxMethod::FiniteDifference(t), &q).unwrap();
        let rel = max_diff(a.coeffs(), fd.coeffs()) / a.norm();
        assert!(rel <= 10.0 * t, "t={t}: {rel}");
    }
}

#[test]
fn gateaux_is_linear() {
    let s = shape(1.5, Mode::Travelling, 0.05, sample_f());
    let h = FourierCosSeries::mode(6, 3, 1.0).unwrap();
    let q = quad();
    let a = gateaux(&s, 0.1, &h, GateauxMethod::Analytic, &q).unwrap();
    let b = gateaux(&s, 0.1, &h.scaled(-2.5), GateauxMethod::Analytic, &q).unwrap();
    let scaled: Vec<f64> = a.coeffs().iter().map(|v| -2.5 * v).collect();
    assert!(max_diff(&scaled, b.coeffs()) < 1e-12);
}

#[test]
fn gateaux_at_zero_eps_is_multiplier() {
    let s = shape(1.0, Mode::Corotating { m: 2 }, 0.0, FourierCosSeries::zeros(4));
    let h = FourierCosSeries::mode(4, 2, 1.0).unwrap();
    let b = gateaux(&s, 0.0, &h, GateauxMethod::Analytic, &quad()).unwrap();
    assert!((b.coeff(2) - 4.0 / (3.0 * PI)).abs() < 1e-14);
}

// ⨍ K(s)(1 − cos js) ds by Simpson after s = πt², which removes the singularity
fn moment_by_quadrature(alpha: f64, j: usize) -> f64 {
    let n = 20_000;
    let g = |t: f64| {
        if t == 0.0 {
            return 0.0;
        }
        let s = PI * t * t;
        (4.0 * (s / 2.0).sin().powi(2)).powf(-alpha / 2.0) * (1.0 - (j as f64 * s).cos()) * 2.0 * PI * t
    };
    let h = 1.0 / n as f64;
    let mut acc = g(0.0) + g(1.0);
    for i in 1..n {
        acc += if i % 2 == 1 { 4.0 } else { 2.0 } * g(i as f64 * h);
    }
    acc * h / 3.0 / PI
}

#[test]
fn corrected_weights_integrate_trig_exactly() {
    let alpha = 1.5;
    let m = 64;
    let g = PatchGeometry::corotating(alpha, 1.0, 2, 0.1).unwrap();
    let ev = Evaluator::new(&g, &QuadratureScheme::new(64, m, WindowPolicy::Corrected).unwrap()).unwrap();
    let mu = kernel_moments(alpha, 8).unwrap();
    for j in 1..8 {
        let oracle = moment_by_quadrature(alpha, j);
        assert!((mu[j] - oracle).abs() < 1e-8 * oracle, "j={j}: {} vs {oracle}", mu[j]);
        let s: f64 = (0..m)
            .map(|k| ev.weights()[k] * (j as f64 * 2.0 * PI * (k as f64 + 0.5) / m as f64).cos())
            .sum();
        assert!((s + mu[j]).abs() < 1e-12, "j={j}");
    }
}

#[test]
fn plain_and_corrected_agree_at_high_resolution() {
    let f = sample_f();
    let g = PatchGeometry::corotating(1.0, 1.0, 2, 0.05).unwrap();
    let s = BoundaryShape::new(g, f).unwrap();
    let c = eval_G(&s, -0.12, &QuadratureScheme::new(64, 512, WindowPolicy::Corrected).unwrap()).unwrap();
    let p = eval_G(&s, -0.12, &QuadratureScheme::new(64, 512, WindowPolicy::Plain).unwrap()).unwrap();
    assert!(max_diff(c.series.coeffs(), p.series.coeffs()) < 1e-3);
}

fn disk(center: [f64; 2], r: f64, n: usize, strength: f64) -> Curve {
    let pts = (0..n)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / n as f64;
            [r * t.cos(), r * t.sin()]
        })
        .collect();
    Curve::new(center, pts, strength)
}

#[test]
fn disk_is_stationary() {
    for alpha in [0.5, 1.0, 1.5] {
        let c = [disk([0.3, -0.2], 0.1, 128, 100.0)];
        let targets: Vec<Target> = (0..128).map(|k| Target::OnCurve { curve: 0, node: k }).collect();
        let v = boundary_velocity(&c, alpha, &targets, &VelocityOptions::default()).unwrap();
        let speed = v.iter().map(|w| w[0].hypot(w[1])).fold(0.0, f64::max);
        for (k, w) in v.iter().enumerate() {
            let p = c[0].points[k];
            let vn = (w[0] * p[0] + w[1] * p[1]) / 0.1;
            assert!(vn.abs() < 1e-10 * speed.max(1.0), "alpha={alpha}: {vn}");
        }
    }
}

#[test]
fn tangent_gauge_leaves_normal_velocity() {
    let pts: Vec<[f64; 2]> = (0..128)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / 128.0;
            let r = 0.1 * (1.0 + 0.1 * (2.0 * t).cos());
            [r * t.cos(), r * t.sin()]
        })
        .collect();
    let c = [Curve::new([1.0, 0.0], pts, 1.0), disk([-1.0, 0.0], 0.1, 128, 1.0)];
    let targets: Vec<Target> = (0..128).map(|k| Target::OnCurve { curve: 0, node: k }).collect();
    let a = boundary_velocity(&c, 1.5, &targets, &VelocityOptions::default()).unwrap();
    let b = boundary_velocity(&c, 1.5, &targets, &VelocityOptions { tangent_gauge: 0.7, correction: true }).unwrap();
    let x: Vec<f64> = c[0].points.iter().map(|p| p[0]).collect();
    let y: Vec<f64> = c[0].points.iter().map(|p| p[1]).collect();
    let (tx, ty) = (&velocity::spectral_derivatives(&x)[0], &velocity::spectral_derivatives(&y)[0]);
    let mut moved = 0.0f64;
    for k in 0..128 {
        let n = [ty[k], -tx[k]];
        let da = a[k][0] * n[0] + a[k][1] * n[1];
        let db = b[k][0] * n[0] + b[k][1] * n[1];
        assert!((da - db).abs() < 1e-10 * da.abs().max(1e-3));
        moved = moved.max((a[k][0] - b[k][0]).abs());
    }
    assert!(moved > 1e-6);
}

#[test]
fn opposite_disks_translate_at_pair_speed() {
    let alpha = 1.5;
    let w = w_star(alpha, 1.0).unwrap();
    let err = |eps: f64| {
        let q = 1.0 / (eps * eps);
        let c = [disk([1.0, 0.0], eps, 256, q), disk([-1.0, 0.0], eps, 256, -q)];
        let v = boundary_velocity(&c, alpha, &[Target::Point([1.0, 0.0])], &VelocityOptions::default()).unwrap();
        (v[0][1].abs() - w).abs() / w
    };
    let (a, b) = (err(0.1), err(0.05));
    assert!(b < a && b < 1e-2, "{a} {b}");
}

#[test]
fn intersecting_curves_are_rejected() {
    let c = [disk([0.0, 0.0], 0.1, 64, 1.0), disk([0.15, 0.0], 0.1, 64, 1.0)];
    let r = boundary_velocity(&c, 1.0, &[Target::Point([1.0, 1.0])], &VelocityOptions::default());
    assert!(matches!(r, Err(Error::SelfIntersection)));
    let c = [disk([0.0, 0.0], 0.2, 64, 1.0), disk([0.0, 0.0], 0.1, 64, 1.0)];
    assert!(boundary_velocity(&c, 1.0, &[Target::Point([1.0, 1.0])], &VelocityOptions::default()).is_err());
}
