use std::f64::consts::PI;

use crate::kernels::{kernel_moments, riesz_constant};
use crate::scalar::{Dual, Real};
use crate::spectral::{analyze, FourierCosSeries, Parity, PeriodicGrid};
use crate::{Error, Result};

use super::{check_radius, Evaluation, Mode, PatchGeometry, QuadratureScheme, WindowPolicy};

struct Partner {
    sign: f64,
    w2: f64,
    wpow: f64,
    sin_phi: Vec<f64>,
    cos_phi: Vec<f64>,
    we_x: Vec<f64>,
    we_y: Vec<f64>,
}

/// Precomputed quadrature tables for one `(α, d, mode, N, M, policy)`.
///
/// Outer nodes `x_n = 2πn/N`; inner offsets `s_k = 2π(k+½)/M`, so the inner
/// points `y = x_n − s_k` lie on the half-offset grid of size `M` and never
/// coincide with `x_n`.
pub struct Evaluator {
    alpha: f64,
    d: f64,
    mode: Mode,
    c: f64,
    n: usize,
    m: usize,
    weights: Vec<f64>,
    sin_s: Vec<f64>,
    cos_s: Vec<f64>,
    four_s2: Vec<f64>,
    cos_x: Vec<f64>,
    sin_x: Vec<f64>,
    partners: Vec<Partner>,
}

/// The three pieces of the functional on the outer grid:
/// value `= speed · frame + self_term + cross_term`.
#[derive(Debug, Clone, PartialEq)]
pub struct Components {
    pub frame: Vec<f64>,
    pub self_term: Vec<f64>,
    pub cross_term: Vec<f64>,
}

struct Samples<T> {
    fx: Vec<T>,
    fpx: Vec<T>,
    fy: Vec<T>,
    fpy: Vec<T>,
}

struct Parts<T> {
    frame: Vec<T>,
    self_term: Vec<T>,
    cross_term: Vec<T>,
}

/// Product-integration weights: `Σ_k W_k u(s_k) = ⨍ K(s)(I_M u(s) − I_M u(0)) ds`
/// for the trigonometric interpolant `I_M u` on the half-offset nodes.
fn corrected_weights(alpha: f64, m: usize) -> Result<Vec<f64>> {
    let mu = kernel_moments(alpha, m / 2)?;
    let tab: Vec<f64> = (0..2 * m).map(|i| (PI * i as f64 / m as f64).cos()).collect();
    Ok((0..m)
        .map(|k| {
            let s: f64 = (1..m / 2).map(|j| mu[j] * tab[(j * (2 * k + 1)) % (2 * m)]).sum();
            -2.0 * s / m as f64
        })
        .collect())
}

impl Evaluator {
    pub fn new(geom: &PatchGeometry, quad: &QuadratureScheme) -> Result<Self> {
        geom.validate()?;
        quad.validate()?;
        let (alpha, n, m) = (geom.alpha, quad.n, quad.m);
        let c = riesz_constant(alpha)?;
        let s: Vec<f64> = (0..m).map(|k| 2.0 * PI * (k as f64 + 0.5) / m as f64).collect();
        let sin_s: Vec<f64> = s.iter().map(|v| v.sin()).collect();
        let cos_s: Vec<f64> = s.iter().map(|v| v.cos()).collect();
        let four_s2: Vec<f64> = s.iter().map(|v| 4.0 * (v / 2.0).sin().powi(2)).collect();
        let weights = match quad.policy {
            WindowPolicy::Plain => four_s2.iter().map(|q| q.powf(-alpha / 2.0) / m as f64).collect(),
            WindowPolicy::Corrected => corrected_weights(alpha, m)?,
        };
        let xg = PeriodicGrid::new(n);
        let yg = PeriodicGrid::half_offset(m);
        let cos_x = xg.nodes().iter().map(|x| x.cos()).collect();
        let sin_x = xg.nodes().iter().map(|x| x.sin()).collect();
        let thetas: Vec<(f64, f64)> = match geom.mode {
            Mode::Corotating { m: fold } => {
                (1..fold).map(|i| (2.0 * PI * i as f64 / fold as f64, 1.0)).collect()
            }
            Mode::Travelling => vec![(PI, -1.0)],
        };
        let partners = thetas
            .into_iter()
            .map(|(th, sign)| {
                let w = [geom.d * (th.cos() - 1.0), geom.d * th.sin()];
                let w2 = w[0] * w[0] + w[1] * w[1];
                let dot = |t: f64| w[0] * t.cos() + w[1] * t.sin();
                Partner {
                    sign,
                    w2,
                    wpow: w2.powf(-alpha / 2.0),
                    sin_phi: s.iter().map(|v| (v - th).sin()).collect(),
                    cos_phi: s.iter().map(|v| (v - th).cos()).collect(),
                    we_x: xg.nodes().iter().map(|&x| dot(x)).collect(),
                    we_y: yg.nodes().iter().map(|&y| dot(y + th)).collect(),
                }
            })
            .collect();
        Ok(Self {
            alpha,
            d: geom.d,
            mode: geom.mode,
            c,
            n,
            m,
            weights,
            sin_s,
            cos_s,
            four_s2,
            cos_x,
            sin_x,
            partners,
        })
    }

    pub fn outer_size(&self) -> usize {
        self.n
    }

    pub fn inner_size(&self) -> usize {
        self.m
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// Self-interaction weights (test hook).
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    fn samples(&self, f: &FourierCosSeries) -> Result<Samples<f64>> {
        let xg = PeriodicGrid::new(self.n);
        let yg = PeriodicGrid::half_offset(self.m);
        Ok(Samples {
            fx: f.derivative_samples(&xg, 0)?,
            fpx: f.derivative_samples(&xg, 1)?,
            fy: f.derivative_samples(&yg, 0)?,
            fpy: f.derivative_samples(&yg, 1)?,
        })
    }

    /// Output truncation for an input of truncation `j`.
    fn out_j(&self, j: usize) -> Result<usize> {
        if self.n < 4 * (j + 1) {
            return Err(Error::Aliasing { n: self.n, j });
        }
        Ok(j.max(1))
    }

    fn finish(&self, grid: Vec<f64>, j: usize) -> Result<Evaluation> {
        let a = analyze(&grid, Parity::Odd);
        Ok(Evaluation { series: a.sin_series(j)?, grid, leakage: a.leakage })
    }

    /// `G` (or `H`) at `(ε, speed, f)`; `ε = 0` gives the quadrature of the limit form.
    pub fn evaluate(&self, eps: f64, f: &FourierCosSeries, speed: f64) -> Result<Evaluation> {
        let j = self.out_j(f.truncation())?;
        let c = self.components(eps, f)?;
        let grid = (0..self.n)
            .map(|i| speed * c.frame[i] + c.self_term[i] + c.cross_term[i])
            .collect();
        self.finish(grid, j)
    }

    /// Speed-independent part and speed coefficient on the outer grid.
    pub fn components(&self, eps: f64, f: &FourierCosSeries) -> Result<Components> {
        self.out_j(f.truncation())?;
        let p = self.parts(eps, &self.samples(f)?)?;
        Ok(Components { frame: p.frame, self_term: p.self_term, cross_term: p.cross_term })
    }

    /// Exact directional derivative in `f` along `h` at fixed speed.
    pub fn directional(&self, eps: f64, f: &FourierCosSeries, h: &FourierCosSeries, speed: f64) -> Result<Evaluation> {
        let j = self.out_j(f.truncation().max(h.truncation()))?;
        let a = self.samples(f)?;
        let b = self.samples(h)?;
        let zip = |u: &[f64], v: &[f64]| -> Vec<Dual> { u.iter().zip(v).map(|(&x, &y)| Dual::new(x, y)).collect() };
        let s = Samples {
            fx: zip(&a.fx, &b.fx),
            fpx: zip(&a.fpx, &b.fpx),
            fy: zip(&a.fy, &b.fy),
            fpy: zip(&a.fpy, &b.fpy),
        };
        let p = self.parts(eps, &s)?;
        let grid = (0..self.n)
            .map(|i| (p.frame[i] * speed + p.self_term[i] + p.cross_term[i]).d)
            .collect();
        self.finish(grid, j)
    }

    fn parts<T: Real>(&self, eps: f64, s: &Samples<T>) -> Result<Parts<T>> {
        let (n, m, alpha) = (self.n, self.m, self.alpha);
        let p = m / n;
        let ea = eps.abs().powf(alpha);
        let eta = eps * ea;
        let ha = alpha / 2.0;

        let ry: Vec<T> = s.fy.iter().map(|&v| v * eta + 1.0).collect();
        let rx: Vec<T> = s.fx.iter().map(|&v| v * eta + 1.0).collect();
        check_radius(&ry.iter().map(|r| r.value()).collect::<Vec<_>>())?;
        check_radius(&rx.iter().map(|r| r.value()).collect::<Vec<_>>())?;
        let rmy: Vec<T> = ry.iter().map(|&r| r.powf(-ha)).collect();
        // f̃ ln(1 + η f̃)/(η f̃)
        let lfy: Vec<T> = s.fy.iter().map(|&v| v * (v * eta).lnrel()).collect();

        let zero = T::cst(0.0);
        let mut frame = Vec::with_capacity(n);
        let mut self_term = Vec::with_capacity(n);
        let mut cross_term = Vec::with_capacity(n);

        for i in 0..n {
            let (fx, fpx, r) = (s.fx[i], s.fpx[i], rx[i]);
            let inv_r = T::cst(1.0) / r;
            let rm = r.powf(-ha);
            let l0 = (p * i + m - 1) % m;

            frame.push(match self.mode {
                Mode::Corotating { .. } => {
                    -(fpx * (eps * eta) - fpx * inv_r * (self.d * eta * self.cos_x[i]) + self.d * self.sin_x[i])
                }
                Mode::Travelling => -(T::cst(self.sin_x[i]) - fpx * inv_r * (eta * self.cos_x[i])),
            });

            let mut acc = zero;
            let mut l = l0;
            for k in 0..m {
                let (ft, fpt, rt) = (s.fy[l], s.fpy[l], ry[l]);
                let delta = fx - ft;
                let qe = delta * delta * eta / (r * rt * self.four_s2[k]);
                let q = qe * eta;
                let lq = q.ln_1p();
                let loe = lfy[l] * (1.0 - ha) - qe * q.lnrel_with(lq) * ha;
                let a = rm * loe * (loe * eta).exprel() * self.sin_s[k];
                let rho = rm * rmy[l] * (lq * (-ha)).exp();
                let b = inv_r * rho * ((r * fpt - fpx * rt) * self.cos_s[k] + fpx * fpt * (eta * self.sin_s[k]));
                acc = acc + (a + b) * self.weights[k];
                l = if l == 0 { m - 1 } else { l - 1 };
            }
            self_term.push(acc * self.c);

            let mut cross = zero;
            for pt in &self.partners {
                let mut acc = zero;
                let mut l = l0;
                for k in 0..m {
                    let (fpt, rt) = (s.fpy[l], ry[l]);
                    let wu = r * pt.we_x[i] - rt * pt.we_y[l];
                    let uu = r * r + rt * rt - r * rt * (2.0 * pt.cos_phi[k]);
                    let th = (wu * 2.0 + uu * eps) / pt.w2;
                    let z = th * eps;
                    let lz = z.ln_1p();
                    let ell = lfy[l] * ea - th * z.lnrel_with(lz) * ha;
                    let t1 = ell * (ell * eps).exprel() * pt.sin_phi[k];
                    let t2 = inv_r
                        * ((r * fpt - fpx * rt) * pt.cos_phi[k] + fpx * fpt * (eta * pt.sin_phi[k]))
                        * (lz * (-ha)).exp()
                        * ea;
                    acc = acc + t1 + t2;
                    l = if l == 0 { m - 1 } else { l - 1 };
                }
                cross = cross + acc * (pt.sign * self.c * pt.wpow / m as f64);
            }
            cross_term.push(cross);
        }
        Ok(Parts { frame, self_term, cross_term })
    }
}
