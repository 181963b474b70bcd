//! Boundary functionals of the co-rotating and travelling problems.
//!
//! Patch 0 has boundary `d e₁ − z(x)` with `z(x) = ε R(x) e(x)`,
//! `R = 1 + η f`, `η = ε|ε|^α`, `e(x) = (cos x, sin x)`. Co-rotating partners are
//! its rotations by `θ_i = 2πi/m` about the origin; the travelling partner is the
//! point reflection of patch 0 through the origin with opposite strength.
//!
//! With `s = x − y`, `K(s) = (4 sin²(s/2))^{-α/2}` and `⨍` the mean over a period,
//!
//! `G(ε, Ω, f) = −Ω (ε η f′ − d η f′ cos x / R + d sin x) + G_self + G_cross`,
//! `H(ε, W, f) = −W (sin x − η f′ cos x / R) + G_self − G_cross|_{m=2}`,
//!
//! where `G_self = C_α ⨍ K(s) U(x, s) ds` and `U` is the normal self-induced
//! velocity with the odd circle part removed, so that it is smooth, vanishes at
//! `s = 0` and has a regular limit as `ε → 0`. The `ε = 0` limit is
//! `−(Ω d + c₃) sin x + Σ γ_j j a_j sin jx`.

mod quadrature;
pub mod velocity;

use serde::{Deserialize, Serialize};

use crate::kernels::{gamma_multiplier, riesz_constant};
use crate::spectral::{FourierCosSeries, FourierSinSeries, PeriodicGrid};
use crate::{Error, Result};

pub use quadrature::{Components, Evaluator};
pub use velocity::{boundary_velocity, Curve, Target, VelocityOptions};

/// Co-rotating `m`-gon or travelling pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Mode {
    Corotating { m: usize },
    Travelling,
}

impl Mode {
    pub fn name(&self) -> &'static str {
        match self {
            Mode::Corotating { .. } => "corotating",
            Mode::Travelling => "travelling",
        }
    }
}

/// Problem data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PatchGeometry {
    pub alpha: f64,
    pub d: f64,
    pub mode: Mode,
    /// Patch scale; negative values are the signed-ε formulation.
    pub eps: f64,
}

impl PatchGeometry {
    pub fn new(alpha: f64, d: f64, mode: Mode, eps: f64) -> Result<Self> {
        let g = Self { alpha, d, mode, eps };
        g.validate()?;
        Ok(g)
    }

    pub fn corotating(alpha: f64, d: f64, m: usize, eps: f64) -> Result<Self> {
        Self::new(alpha, d, Mode::Corotating { m }, eps)
    }

    pub fn travelling(alpha: f64, d: f64, eps: f64) -> Result<Self> {
        Self::new(alpha, d, Mode::Travelling, eps)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 2.0) {
            return Err(Error::Domain(format!("alpha must lie in (0,2), got {}", self.alpha)));
        }
        if !(self.d > 0.0 && self.d.is_finite()) {
            return Err(Error::Domain(format!("d must be positive, got {}", self.d)));
        }
        if let Mode::Corotating { m } = self.mode {
            if m < 2 {
                return Err(Error::Domain(format!("fold count m must be >= 2, got {m}")));
            }
        }
        if !self.eps.is_finite() || self.eps.abs() >= self.d {
            return Err(Error::Domain(format!("eps must satisfy |eps| < d, got {}", self.eps)));
        }
        Ok(())
    }

    pub fn with_eps(&self, eps: f64) -> Result<Self> {
        Self::new(self.alpha, self.d, self.mode, eps)
    }

    /// `η = ε|ε|^α`.
    pub fn eta(&self) -> f64 {
        self.eps * self.eps.abs().powf(self.alpha)
    }

    /// Number of patches in the family.
    pub fn patch_count(&self) -> usize {
        match self.mode {
            Mode::Corotating { m } => m,
            Mode::Travelling => 2,
        }
    }
}

/// Geometry plus boundary perturbation.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryShape {
    pub geometry: PatchGeometry,
    pub f: FourierCosSeries,
}

impl BoundaryShape {
    /// Checks `R > 0` on a grid fine enough to resolve `f`.
    pub fn new(geometry: PatchGeometry, f: FourierCosSeries) -> Result<Self> {
        geometry.validate()?;
        let n = (4 * (f.truncation() + 1)).max(64);
        let r = radius_samples(&geometry, &f, &PeriodicGrid::new(n))?;
        check_radius(&r)?;
        Ok(Self { geometry, f })
    }
}

/// `R = 1 + η f` on `grid`.
pub fn radius_samples(geom: &PatchGeometry, f: &FourierCosSeries, grid: &PeriodicGrid) -> Result<Vec<f64>> {
    let eta = geom.eta();
    Ok(f.derivative_samples(grid, 0)?.into_iter().map(|v| 1.0 + eta * v).collect())
}

pub(crate) fn check_radius(r: &[f64]) -> Result<()> {
    let min_r = r.iter().copied().fold(f64::INFINITY, f64::min);
    if min_r > 0.0 {
        Ok(())
    } else {
        Err(Error::DegenerateBoundary { min_r })
    }
}

/// Treatment of the weakly singular self-interaction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WindowPolicy {
    /// Rectangle rule `K(s_k)/M` on the half-offset nodes.
    Plain,
    /// Product integration against `K` of the trigonometric interpolant.
    Corrected,
}

/// Outer collocation grid and inner quadrature grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadratureScheme {
    /// Outer grid size `N`.
    pub n: usize,
    /// Inner half-offset grid size `M`, a multiple of `N`.
    pub m: usize,
    pub policy: WindowPolicy,
}

impl QuadratureScheme {
    pub fn new(n: usize, m: usize, policy: WindowPolicy) -> Result<Self> {
        let q = Self { n, m, policy };
        q.validate()?;
        Ok(q)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 8 || self.n % 2 != 0 {
            return Err(Error::Domain(format!("outer grid N must be even and >= 8, got {}", self.n)));
        }
        if self.m < self.n || self.m % self.n != 0 {
            return Err(Error::Domain(format!(
                "inner grid M = {} must be a multiple of N = {}",
                self.m, self.n
            )));
        }
        Ok(())
    }
}

impl Default for QuadratureScheme {
    fn default() -> Self {
        Self { n: 256, m: 256, policy: WindowPolicy::Corrected }
    }
}

/// Functional values on the outer grid and their sine coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    /// `b_1..b_J`.
    pub series: FourierSinSeries,
    /// Values at `x_n = 2πn/N`.
    pub grid: Vec<f64>,
    /// Largest cosine coefficient of `grid`.
    pub leakage: f64,
}

fn require_mode(geom: &PatchGeometry, travelling: bool) -> Result<()> {
    match (geom.mode, travelling) {
        (Mode::Corotating { .. }, false) | (Mode::Travelling, true) => Ok(()),
        _ => Err(Error::Domain(format!("functional does not match {} mode", geom.mode.name()))),
    }
}

fn eval_mode(shape: &BoundaryShape, speed: f64, quad: &QuadratureScheme, travelling: bool) -> Result<Evaluation> {
    require_mode(&shape.geometry, travelling)?;
    if shape.geometry.eps == 0.0 {
        return Err(Error::ZeroEps);
    }
    let ev = Evaluator::new(&shape.geometry, quad)?;
    ev.evaluate(shape.geometry.eps, &shape.f, speed)
}

/// Co-rotating functional `G(ε, Ω, f)` by quadrature.
#[allow(non_snake_case)]
pub fn eval_G(shape: &BoundaryShape, omega: f64, quad: &QuadratureScheme) -> Result<Evaluation> {
    eval_mode(shape, omega, quad, false)
}

/// Travelling functional `H(ε, W, f)` by quadrature.
#[allow(non_snake_case)]
pub fn eval_H(shape: &BoundaryShape, w: f64, quad: &QuadratureScheme) -> Result<Evaluation> {
    eval_mode(shape, w, quad, true)
}

/// `c₃ = −Σ_i α C_α (cos θ_i − 1) / (2 d^{1+α} ((cos θ_i − 1)² + sin² θ_i)^{1+α/2})`,
/// the `sin x` coefficient of the far-field interaction at `ε = 0` (with a minus sign).
pub fn interaction_constant(alpha: f64, d: f64, m: usize) -> Result<f64> {
    let c = riesz_constant(alpha)?;
    let mut s = 0.0;
    for i in 1..m {
        let th = 2.0 * std::f64::consts::PI * i as f64 / m as f64;
        let a = th.cos() - 1.0;
        let q = a * a + th.sin().powi(2);
        s += alpha * c * a / (2.0 * q.powf(1.0 + alpha / 2.0));
    }
    Ok(-s / d.powf(1.0 + alpha))
}

/// `ε = 0` functional from the multiplier table; `α ∈ [1,2)`.
///
/// Co-rotating: `−(Ω d + c₃) sin x + Σ γ_j j a_j sin jx`;
/// travelling: `−(W − W*) sin x + Σ γ_j j a_j sin jx`.
#[allow(non_snake_case)]
pub fn eval_G_limit(speed: f64, f: &FourierCosSeries, geom: &PatchGeometry) -> Result<FourierSinSeries> {
    geom.validate()?;
    if !(1.0..2.0).contains(&geom.alpha) {
        return Err(Error::Domain(format!("limit functional needs alpha in [1,2), got {}", geom.alpha)));
    }
    let jt = f.truncation();
    let mut b = vec![0.0; jt.max(1)];
    b[0] = match geom.mode {
        Mode::Corotating { m } => -(speed * geom.d + interaction_constant(geom.alpha, geom.d, m)?),
        // the m = 2 interaction with opposite sign
        Mode::Travelling => -(speed - interaction_constant(geom.alpha, geom.d, 2)?),
    };
    for j in 2..=jt {
        b[j - 1] = gamma_multiplier(geom.alpha, j)? * j as f64 * f.coeff(j);
    }
    FourierSinSeries::new(b)
}

/// How [`gateaux`] differentiates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateauxMethod {
    /// Forward-mode dual numbers through the quadrature.
    Analytic,
    /// Central difference with step `t`.
    FiniteDifference(f64),
}

/// Directional derivative `∂_f G(ε, speed, f)[h]` (or `H` in travelling mode) at fixed speed.
///
/// At `ε = 0` this is the limit operator, `Σ γ_j j h_j sin jx` for `α ∈ [1,2)`.
pub fn gateaux(
    shape: &BoundaryShape,
    speed: f64,
    h: &FourierCosSeries,
    method: GateauxMethod,
    quad: &QuadratureScheme,
) -> Result<FourierSinSeries> {
    let geom = &shape.geometry;
    let jt = shape.f.truncation().max(h.truncation());
    let f = shape.f.resized(jt);
    let h = h.resized(jt);
    if geom.eps == 0.0 && !(1.0..2.0).contains(&geom.alpha) {
        // the quadrature form is still well defined at ε = 0
        let ev = Evaluator::new(geom, quad)?;
        return ev.directional(0.0, &f, &h, speed).map(|e| e.series);
    }
    if geom.eps == 0.0 {
        let mut b = vec![0.0; jt];
        for j in 2..=jt {
            b[j - 1] = gamma_multiplier(geom.alpha, j)? * j as f64 * h.coeff(j);
        }
        return FourierSinSeries::new(b);
    }
    let ev = Evaluator::new(geom, quad)?;
    match method {
        GateauxMethod::Analytic => ev.directional(geom.eps, &f, &h, speed).map(|e| e.series),
        GateauxMethod::FiniteDifference(t) => {
            let mut fp = f.clone();
            let mut fm = f.clone();
            for j in 2..=jt {
                fp.set_coeff(j, f.coeff(j) + t * h.coeff(j));
                fm.set_coeff(j, f.coeff(j) - t * h.coeff(j));
            }
            let gp = ev.evaluate(geom.eps, &fp, speed)?;
            let gm = ev.evaluate(geom.eps, &fm, speed)?;
            let b = gp
                .series
                .coeffs()
                .iter()
                .zip(gm.series.coeffs())
                .map(|(p, m)| (p - m) / (2.0 * t))
                .collect();
            FourierSinSeries::new(b)
        }
    }
}

#[cfg(test)]
mod tests;
