//! Test-side oracles that share no code with the library.
#![allow(dead_code)]

use std::f64::consts::PI;

/// Tanh-sinh quadrature on `[a, b]`, refined until successive levels agree to `tol`.
pub fn tanh_sinh(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let node = |t: f64| {
        let u = 0.5 * PI * t.sinh();
        let x = u.tanh();
        let w = 0.5 * PI * t.cosh() / u.cosh().powi(2);
        // distance to the nearer endpoint without cancellation
        let gap = r / (u.abs().exp() * u.cosh());
        (x, w, gap)
    };
    let eval = |t: f64| {
        let (x, w, gap) = node(t);
        if gap <= 0.0 || w == 0.0 {
            return 0.0;
        }
        let xa = if x < 0.0 { a + gap } else { b - gap };
        let xm = if t == 0.0 { c } else { xa };
        w * f(xm)
    };
    let tmax = 4.0;
    let mut h = 0.5;
    let mut sum = eval(0.0);
    let mut k = 1;
    while k as f64 * h <= tmax {
        let t = k as f64 * h;
        sum += eval(t) + eval(-t);
        k += 1;
    }
    let mut prev = sum * h * r;
    for _ in 0..12 {
        h *= 0.5;
        let mut k = 1;
        while k as f64 * h <= tmax {
            let t = k as f64 * h;
            sum += eval(t) + eval(-t);
            k += 2;
        }
        let cur = sum * h * r;
        if (cur - prev).abs() <= tol * cur.abs().max(1e-300) {
            return cur;
        }
        prev = cur;
    }
    prev
}

/// `Γ(x)` for `x > 0`: upward recurrence to `x ≥ 15`, then the Stirling series.
pub fn gamma(x: f64) -> f64 {
    assert!(x > 0.0);
    let mut shift = 0.0;
    let mut y = x;
    while y < 15.0 {
        shift += y.ln();
        y += 1.0;
    }
    let inv = 1.0 / y;
    let inv2 = inv * inv;
    let series = inv
        * (1.0 / 12.0
            - inv2 * (1.0 / 360.0 - inv2 * (1.0 / 1260.0 - inv2 * (1.0 / 1680.0 - inv2 * (1.0 / 1188.0)))));
    ((y - 0.5) * y.ln() - y + 0.5 * (2.0 * PI).ln() + series - shift).exp()
}

/// `β_j = ∫₀^{2π} (1 − cos jy) / sin(y/2)^α dy`, using the symmetry about `π`.
pub fn beta(alpha: f64, j: usize) -> f64 {
    let jf = j as f64;
    2.0 * tanh_sinh(|y| (1.0 - (jf * y).cos()) / (y / 2.0).sin().powf(alpha), 0.0, PI, 1e-13)
}

/// Linearized multiplier `γ_j = Γ(α/2)/Γ(1−α/2) (β_j − β_1)/(4π)`.
pub fn gamma_j(alpha: f64, j: usize) -> f64 {
    gamma(alpha / 2.0) / gamma(1.0 - alpha / 2.0) * (beta(alpha, j) - beta(alpha, 1)) / (4.0 * PI)
}

/// `C_α = Γ(α/2) / (2^{1−α} Γ(1 − α/2))`.
pub fn riesz(alpha: f64) -> f64 {
    gamma(alpha / 2.0) / (2f64.powf(1.0 - alpha) * gamma(1.0 - alpha / 2.0))
}

/// Value, first and second derivative of `Σ_{j≥2} a_j cos jx` (slice starts at `a_2`).
pub fn cos_series(a: &[f64], x: f64) -> (f64, f64, f64) {
    let mut v = (0.0, 0.0, 0.0);
    for (i, &c) in a.iter().enumerate() {
        let j = (i + 2) as f64;
        let (s, co) = (j * x).sin_cos();
        v.0 += c * co;
        v.1 -= c * j * s;
        v.2 -= c * j * j * co;
    }
    v
}

/// Least-squares slope and intercept.
pub fn fit_line(pts: &[(f64, f64)]) -> (f64, f64) {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    (sxy / sxx, my - sxy / sxx * mx)
}
