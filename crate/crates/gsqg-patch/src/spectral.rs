//! Parity-pure Fourier series, grid transforms and the discrete norms of the
//! solution spaces.
//!
//! Cosine series carry modes `j = 2..=J` (the `j = 0, 1` modes are not
//! representable); sine series carry `j = 1..=J`. Transforms are direct sums
//! over exact trigonometric tables, so results do not depend on FFT planning.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Default truncation order.
pub const DEFAULT_J: usize = 64;
/// Default outer grid size.
pub const DEFAULT_N: usize = 512;

/// Even perturbation `f(x) = Σ_{j=2}^{J} a_j cos(jx)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct FourierCosSeries {
    // a_2, a_3, ..., a_J
    coeffs: Vec<f64>,
}

/// Odd series `Σ_{j=1}^{J} b_j sin(jx)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct FourierSinSeries {
    // b_1, b_2, ..., b_J
    coeffs: Vec<f64>,
}

fn check_finite(c: &[f64]) -> Result<()> {
    match c.iter().position(|v| !v.is_finite()) {
        Some(i) => Err(Error::Domain(format!("non-finite coefficient at slot {i}"))),
        None => Ok(()),
    }
}

impl FourierCosSeries {
    /// Builds from `[a_2, ..., a_J]`.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        check_finite(&coeffs)?;
        Ok(Self { coeffs })
    }

    /// Zero series with truncation `J` (`J >= 1`).
    pub fn zeros(j: usize) -> Self {
        Self { coeffs: vec![0.0; j.saturating_sub(1)] }
    }

    /// Single mode `a cos(jx)` inside truncation `trunc`.
    pub fn mode(trunc: usize, j: usize, a: f64) -> Result<Self> {
        if j < 2 || j > trunc {
            return Err(Error::Domain(format!("cosine mode {j} outside 2..={trunc}")));
        }
        let mut s = Self::zeros(trunc);
        s.coeffs[j - 2] = a;
        Ok(s)
    }

    /// Truncation order `J`.
    pub fn truncation(&self) -> usize {
        self.coeffs.len() + 1
    }

    /// `a_j`, zero outside `2..=J`.
    pub fn coeff(&self, j: usize) -> f64 {
        if j < 2 {
            0.0
        } else {
            self.coeffs.get(j - 2).copied().unwrap_or(0.0)
        }
    }

    pub fn set_coeff(&mut self, j: usize, a: f64) {
        assert!(j >= 2 && j <= self.truncation(), "mode {j} outside series");
        self.coeffs[j - 2] = a;
    }

    /// `[a_2, ..., a_J]`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    /// Copy with truncation changed to `j`, padding with zeros or dropping modes.
    pub fn resized(&self, j: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.resize(j.saturating_sub(1), 0.0);
        Self { coeffs: c }
    }

    pub fn scaled(&self, c: f64) -> Self {
        Self { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// `f(-x)` evaluated coefficient-wise: identity for a cosine series.
    pub fn reflected(&self) -> Self {
        self.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&a| a == 0.0)
    }

    fn modes(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.coeffs.iter().enumerate().map(|(i, &a)| (i + 2, a))
    }

    /// Samples of the `order`-th derivative on `grid`.
    pub fn derivative_samples(&self, grid: &PeriodicGrid, order: u32) -> Result<Vec<f64>> {
        check_alias(grid.n, self.truncation())?;
        // d^k/dx^k cos(jx) = j^k cos(jx + kπ/2)
        let (kind, sign) = match order % 4 {
            0 => (Trig::Cos, 1.0),
            1 => (Trig::Sin, -1.0),
            2 => (Trig::Cos, -1.0),
            _ => (Trig::Sin, 1.0),
        };
        let modes = self.modes().map(|(j, a)| (j, sign * a * (j as f64).powi(order as i32)));
        Ok(trig_sum(modes, kind, grid))
    }
}

impl FourierSinSeries {
    /// Builds from `[b_1, ..., b_J]`.
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        check_finite(&coeffs)?;
        Ok(Self { coeffs })
    }

    pub fn zeros(j: usize) -> Self {
        Self { coeffs: vec![0.0; j] }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    /// `b_j`, zero outside `1..=J`.
    pub fn coeff(&self, j: usize) -> f64 {
        if j == 0 {
            0.0
        } else {
            self.coeffs.get(j - 1).copied().unwrap_or(0.0)
        }
    }

    pub fn set_coeff(&mut self, j: usize, b: f64) {
        assert!(j >= 1 && j <= self.truncation(), "mode {j} outside series");
        self.coeffs[j - 1] = b;
    }

    /// `[b_1, ..., b_J]`.
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Member of `Y₀` (no `sin x` component).
    pub fn in_y0(&self, tol: f64) -> bool {
        self.coeff(1).abs() <= tol
    }

    /// Euclidean norm of `b_2..b_J`.
    pub fn y0_norm(&self) -> f64 {
        self.coeffs.iter().skip(1).map(|b| b * b).sum::<f64>().sqrt()
    }

    /// Euclidean norm of all coefficients.
    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|b| b * b).sum::<f64>().sqrt()
    }

    fn modes(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.coeffs.iter().enumerate().map(|(i, &b)| (i + 1, b))
    }
}

impl TryFrom<Vec<f64>> for FourierCosSeries {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<FourierCosSeries> for Vec<f64> {
    fn from(s: FourierCosSeries) -> Self {
        s.coeffs
    }
}

impl TryFrom<Vec<f64>> for FourierSinSeries {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<FourierSinSeries> for Vec<f64> {
    fn from(s: FourierSinSeries) -> Self {
        s.coeffs
    }
}

/// Uniform periodic grid `x_n = 2π(n + o)/N`, `o ∈ {0, 1/2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicGrid {
    pub n: usize,
    pub half_offset: bool,
}

impl PeriodicGrid {
    pub fn new(n: usize) -> Self {
        Self { n, half_offset: false }
    }

    pub fn half_offset(n: usize) -> Self {
        Self { n, half_offset: true }
    }

    pub fn spacing(&self) -> f64 {
        2.0 * PI / self.n as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        let o = if self.half_offset { 0.5 } else { 0.0 };
        2.0 * PI * (i as f64 + o) / self.n as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.node(i)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

/// A series that can be sampled on a grid.
pub trait Synthesize {
    fn synthesize(&self, grid: &PeriodicGrid) -> Result<Vec<f64>>;
}

impl Synthesize for FourierCosSeries {
    fn synthesize(&self, grid: &PeriodicGrid) -> Result<Vec<f64>> {
        self.derivative_samples(grid, 0)
    }
}

impl Synthesize for FourierSinSeries {
    fn synthesize(&self, grid: &PeriodicGrid) -> Result<Vec<f64>> {
        check_alias(grid.n, self.truncation())?;
        Ok(trig_sum(self.modes(), Trig::Sin, grid))
    }
}

/// Samples `series` on `grid`; rejects `N < 4(J+1)`.
pub fn synthesize<S: Synthesize>(series: &S, grid: &PeriodicGrid) -> Result<Vec<f64>> {
    series.synthesize(grid)
}

fn check_alias(n: usize, j: usize) -> Result<()> {
    if n < 4 * (j + 1) {
        Err(Error::Aliasing { n, j })
    } else {
        Ok(())
    }
}

#[derive(Clone, Copy)]
enum Trig {
    Cos,
    Sin,
}

// cos/sin(π k / N) for k in 0..2N. Angles j x_n reduce to integer multiples of π/N.
fn table(n: usize, kind: Trig) -> Vec<f64> {
    (0..2 * n)
        .map(|k| {
            let t = PI * k as f64 / n as f64;
            match kind {
                Trig::Cos => t.cos(),
                Trig::Sin => t.sin(),
            }
        })
        .collect()
}

fn trig_sum(modes: impl Iterator<Item = (usize, f64)>, kind: Trig, grid: &PeriodicGrid) -> Vec<f64> {
    let n = grid.n;
    let tab = table(n, kind);
    let o = usize::from(grid.half_offset);
    let modes: Vec<(usize, f64)> = modes.filter(|&(_, a)| a != 0.0).collect();
    (0..n)
        .map(|i| {
            // j x_i = π j (2i + o) / N
            let m = 2 * i + o;
            modes.iter().map(|&(j, a)| a * tab[(j * m) % (2 * n)]).sum()
        })
        .collect()
}

/// Result of projecting grid samples onto one parity.
#[derive(Debug, Clone, PartialEq)]
pub struct Analysis {
    pub parity: Parity,
    /// Coefficients of the declared parity indexed by `j = 0..=N/2`.
    pub coeffs: Vec<f64>,
    /// Largest coefficient magnitude of the opposite parity.
    pub leakage: f64,
}

impl Analysis {
    /// Cosine series `a_2..a_J`.
    pub fn cos_series(&self, j: usize) -> Result<FourierCosSeries> {
        if self.parity != Parity::Even {
            return Err(Error::Domain("odd analysis has no cosine series".into()));
        }
        FourierCosSeries::new((2..=j).map(|k| self.coeffs.get(k).copied().unwrap_or(0.0)).collect())
    }

    /// Sine series `b_1..b_J`.
    pub fn sin_series(&self, j: usize) -> Result<FourierSinSeries> {
        if self.parity != Parity::Odd {
            return Err(Error::Domain("even analysis has no sine series".into()));
        }
        FourierSinSeries::new((1..=j).map(|k| self.coeffs.get(k).copied().unwrap_or(0.0)).collect())
    }
}

/// Discrete Fourier projection of samples on the regular grid of size `samples.len()`.
pub fn analyze(samples: &[f64], parity: Parity) -> Analysis {
    let n = samples.len();
    let half = n / 2;
    let ctab = table(n, Trig::Cos);
    let stab = table(n, Trig::Sin);
    let mut cos_c = vec![0.0; half + 1];
    let mut sin_c = vec![0.0; half + 1];
    for j in 0..=half {
        let (mut c, mut s) = (0.0, 0.0);
        for (i, &v) in samples.iter().enumerate() {
            let k = (2 * i * j) % (2 * n);
            c += v * ctab[k];
            s += v * stab[k];
        }
        let w = if j == 0 || 2 * j == n { 1.0 } else { 2.0 } / n as f64;
        cos_c[j] = w * c;
        sin_c[j] = w * s;
    }
    let (coeffs, other) = match parity {
        Parity::Even => (cos_c, sin_c),
        Parity::Odd => (sin_c, cos_c),
    };
    let leakage = other.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Analysis { parity, coeffs, leakage }
}

/// Weight of [`space_norm`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormWeight {
    Plain,
    Log,
    /// `j^{2(k+α-1)}`, `α ∈ (1,2)`.
    Fractional(f64),
}

/// `(Σ a_j² w_j)^{1/2}` with `w_j = j^{2k}`, `j^{2k}(1+ln j)²` or `j^{2(k+α−1)}`.
pub fn space_norm(series: &FourierCosSeries, k: u32, weight: NormWeight) -> Result<f64> {
    if let NormWeight::Fractional(a) = weight {
        if !(a > 1.0 && a < 2.0) {
            return Err(Error::Domain(format!("fractional weight needs α in (1,2), got {a}")));
        }
    }
    let s: f64 = series
        .modes()
        .map(|(j, a)| {
            let jf = j as f64;
            let w = match weight {
                NormWeight::Plain => jf.powi(2 * k as i32),
                NormWeight::Log => jf.powi(2 * k as i32) * (1.0 + jf.ln()).powi(2),
                NormWeight::Fractional(al) => jf.powf(2.0 * (k as f64 + al - 1.0)),
            };
            a * a * w
        })
        .sum();
    Ok(s.sqrt())
}
