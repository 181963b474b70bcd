//! Physical reconstruction, curvature, spectral decay, power-law fits and the
//! physical-space stationarity residual of branch records.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::functional::velocity::curves_simple_disjoint;
use crate::functional::{boundary_velocity, Curve, Mode, PatchGeometry, Target, VelocityOptions};
use crate::solver::BranchRecord;
use crate::spectral::{FourierCosSeries, PeriodicGrid};
use crate::{Error, Result};

/// One reconstructed boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct PatchCurve {
    pub patch_id: usize,
    /// Signed amplitude `±1/ε²`.
    pub strength: f64,
    pub center: [f64; 2],
    /// Parameter values `x_n`.
    pub theta: Vec<f64>,
    /// Boundary nodes relative to `center`.
    pub offsets: Vec<[f64; 2]>,
    /// Exact first, second and third derivatives in `x`.
    pub derivatives: [Vec<[f64; 2]>; 3],
}

impl PatchCurve {
    /// Absolute boundary nodes.
    pub fn points(&self) -> Vec<[f64; 2]> {
        self.offsets.iter().map(|p| [self.center[0] + p[0], self.center[1] + p[1]]).collect()
    }
}

/// All patches of one record.
#[derive(Debug, Clone, PartialEq)]
pub struct PatchFamily {
    pub geometry: PatchGeometry,
    pub speed: f64,
    pub curves: Vec<PatchCurve>,
    /// Set when the curves are not simple and mutually disjoint.
    pub flagged: bool,
}

/// Per-record diagnostic snapshot stored alongside branch output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecordDiagnostics {
    pub min_curvature: f64,
    pub max_curvature_deviation: f64,
    pub last_significant_mode: Option<usize>,
    pub decay_ratio: Option<f64>,
    pub normal_velocity_residual: Option<f64>,
}

fn rot(t: f64, p: [f64; 2]) -> [f64; 2] {
    let (s, c) = t.sin_cos();
    [c * p[0] - s * p[1], s * p[0] + c * p[1]]
}

/// Patch 0 is `d e₁ − ε R(x) e(x)`. Co-rotating copies are its rotations by
/// `2πi/m` about the origin; the travelling partner is its point reflection
/// through the origin with opposite strength.
pub fn reconstruct(record: &BranchRecord, geom: &PatchGeometry, n: usize) -> Result<PatchFamily> {
    let g = geom.with_eps(record.eps)?;
    if g.eps == 0.0 {
        return Err(Error::Domain("cannot reconstruct a point vortex".into()));
    }
    let grid = PeriodicGrid::new(n);
    let f: Vec<Vec<f64>> = (0..4).map(|k| record.coeffs.derivative_samples(&grid, k)).collect::<Result<_>>()?;
    let eta = g.eta();
    let theta = grid.nodes();
    // p = −εR e, e = (cos x, sin x), e′ = e⊥
    let mut base = Vec::with_capacity(n);
    let mut der: [Vec<[f64; 2]>; 3] = Default::default();
    for (i, &x) in theta.iter().enumerate() {
        let r0 = g.eps * (1.0 + eta * f[0][i]);
        let [r1, r2, r3] = [1, 2, 3].map(|k| g.eps * eta * f[k][i]);
        let (s, c) = x.sin_cos();
        let comb = |a: f64, b: f64| [-(a * c - b * s), -(a * s + b * c)];
        base.push(comb(r0, 0.0));
        der[0].push(comb(r1, r0));
        der[1].push(comb(r2 - r0, 2.0 * r1));
        der[2].push(comb(r3 - 3.0 * r1, 3.0 * r2 - r0));
    }
    let q = 1.0 / (g.eps * g.eps);
    let copies: Vec<(f64, f64)> = match g.mode {
        Mode::Corotating { m } => (0..m).map(|i| (2.0 * PI * i as f64 / m as f64, q)).collect(),
        Mode::Travelling => vec![(0.0, q), (PI, -q)],
    };
    let curves: Vec<PatchCurve> = copies
        .into_iter()
        .enumerate()
        .map(|(i, (t, s))| PatchCurve {
            patch_id: i,
            strength: s,
            center: rot(t, [g.d, 0.0]),
            theta: theta.clone(),
            offsets: base.iter().map(|&p| rot(t, p)).collect(),
            derivatives: der.clone().map(|v| v.into_iter().map(|p| rot(t, p)).collect()),
        })
        .collect();
    let abs: Vec<Vec<[f64; 2]>> = curves.iter().map(|c| c.points()).collect();
    let polys: Vec<&[[f64; 2]]> = abs.iter().map(|p| p.as_slice()).collect();
    let flagged = !curves_simple_disjoint(&polys);
    Ok(PatchFamily { geometry: g, speed: record.speed, curves, flagged })
}

/// `εκ(x)` on the grid and its minimum.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureProfile {
    pub values: Vec<f64>,
    pub min: f64,
    /// `max |εκ − 1|`.
    pub max_deviation: f64,
}

/// `εκ = (R² + 2R′² − R R″) / (R² + R′²)^{3/2}` for `R = 1 + ε|ε|^α f`.
pub fn curvature_profile(f: &FourierCosSeries, eps: f64, alpha: f64, n: usize) -> Result<CurvatureProfile> {
    let grid = PeriodicGrid::new(n);
    let eta = eps * eps.abs().powf(alpha);
    let f0 = f.derivative_samples(&grid, 0)?;
    let f1 = f.derivative_samples(&grid, 1)?;
    let f2 = f.derivative_samples(&grid, 2)?;
    let values: Vec<f64> = (0..n)
        .map(|i| {
            let (r, r1, r2) = (1.0 + eta * f0[i], eta * f1[i], eta * f2[i]);
            (r * r + 2.0 * r1 * r1 - r * r2) / (r * r + r1 * r1).powf(1.5)
        })
        .collect();
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max_deviation = values.iter().fold(0.0f64, |m, v| m.max((v - 1.0).abs()));
    Ok(CurvatureProfile { values, min, max_deviation })
}

/// Result of [`exponent_fit`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExponentFit {
    pub exponent: f64,
    pub prefactor: f64,
    pub points_used: usize,
}

/// Least-squares slope of `ln|speed − speed*|` against `ln ε`.
///
/// Points with `|speed − speed*| ≤ 1e−13` are ignored; with more than 8 usable
/// points the 3 smallest and 3 largest `ε` are dropped.
pub fn exponent_fit(points: &[(f64, f64)], speed_star: f64) -> Result<ExponentFit> {
    let mut pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|(e, s)| *e > 0.0 && (s - speed_star).abs() > 1e-13)
        .map(|&(e, s)| (e.ln(), (s - speed_star).abs().ln()))
        .collect();
    if pts.len() < 4 {
        return Err(Error::UndefinedFit(format!("{} usable points, need 4", pts.len())));
    }
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    if pts.len() > 8 {
        pts = pts[3..pts.len() - 3].to_vec();
    }
    let (slope, icpt) = least_squares(&pts);
    Ok(ExponentFit { exponent: slope, prefactor: icpt.exp(), points_used: pts.len() })
}

fn least_squares(pts: &[(f64, f64)]) -> (f64, f64) {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

/// Decay of the cosine coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    /// Largest `j` with `|a_j| > 1e−12`.
    pub last_significant: Option<usize>,
    /// Geometric ratio fitted to `ln|a_j|` over the significant modes.
    pub ratio: Option<f64>,
}

pub fn spectral_decay(f: &FourierCosSeries) -> DecayReport {
    let sig: Vec<(f64, f64)> = (2..=f.truncation())
        .filter(|&j| f.coeff(j).abs() > 1e-12)
        .map(|j| (j as f64, f.coeff(j).abs().ln()))
        .collect();
    let last_significant = sig.last().map(|p| p.0 as usize);
    let ratio = (sig.len() >= 2).then(|| least_squares(&sig).0.exp());
    DecayReport { last_significant, ratio }
}

/// Worst `|(v − U)·n|` over all boundary nodes divided by the largest boundary
/// speed `max|v|`, where `U = Ω x^⊥` (co-rotating) or `U = W e₂` (travelling)
/// and `v` comes from [`boundary_velocity`].
pub fn normal_velocity_residual(record: &BranchRecord, geom: &PatchGeometry, n: usize) -> Result<f64> {
    let fam = reconstruct(record, geom, n)?;
    family_normal_residual(&fam, &VelocityOptions::default())
}

/// [`normal_velocity_residual`] on an already reconstructed family.
pub fn family_normal_residual(fam: &PatchFamily, opts: &VelocityOptions) -> Result<f64> {
    if fam.flagged {
        return Err(Error::SelfIntersection);
    }
    let curves: Vec<Curve> = fam
        .curves
        .iter()
        .map(|c| Curve {
            center: c.center,
            points: c.offsets.clone(),
            strength: c.strength,
            derivatives: Some(c.derivatives.clone()),
        })
        .collect();
    let targets: Vec<Target> = curves
        .iter()
        .enumerate()
        .flat_map(|(ci, c)| (0..c.points.len()).map(move |k| Target::OnCurve { curve: ci, node: k }))
        .collect();
    let v = boundary_velocity(&curves, fam.geometry.alpha, &targets, opts)?;
    let travelling = fam.geometry.mode == Mode::Travelling;
    let mut worst = 0.0f64;
    let mut vmax = 0.0f64;
    let mut vi = v.iter();
    for (c, pc) in curves.iter().zip(&fam.curves) {
        for k in 0..c.points.len() {
            let p = c.absolute(k);
            let u = if travelling { [0.0, fam.speed] } else { [-fam.speed * p[1], fam.speed * p[0]] };
            let w = vi.next().expect("one velocity per node");
            let t = pc.derivatives[0][k];
            let nl = t[0].hypot(t[1]);
            // outward normal of a counterclockwise curve
            let nrm = [t[1] / nl, -t[0] / nl];
            worst = worst.max(((w[0] - u[0]) * nrm[0] + (w[1] - u[1]) * nrm[1]).abs());
            vmax = vmax.max(w[0].hypot(w[1]));
        }
    }
    Ok(worst / vmax)
}

/// Snapshot for serialization; the oracle residual is computed when `oracle_n` is given.
pub fn record_diagnostics(
    record: &BranchRecord,
    geom: &PatchGeometry,
    n: usize,
    oracle_n: Option<usize>,
) -> Result<RecordDiagnostics> {
    let k = curvature_profile(&record.coeffs, record.eps, geom.alpha, n)?;
    let dec = spectral_decay(&record.coeffs);
    let nvr = match oracle_n {
        Some(on) if record.eps != 0.0 => Some(normal_velocity_residual(record, geom, on)?),
        _ => None,
    };
    Ok(RecordDiagnostics {
        min_curvature: k.min,
        max_curvature_deviation: k.max_deviation,
        last_significant_mode: dec.last_significant,
        decay_ratio: dec.ratio,
        normal_velocity_residual: nvr,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_power_law() {
        let pts: Vec<(f64, f64)> = (0..10).map(|i| 0.005 * 1.3f64.powi(i)).map(|e| (e, -0.1 + 0.3 * e.powf(1.5))).collect();
        let fit = exponent_fit(&pts, -0.1).unwrap();
        assert!((fit.exponent - 1.5).abs() < 1e-10);
        assert!((fit.prefactor - 0.3).abs() < 1e-9);
        assert_eq!(fit.points_used, 4);
    }

    #[test]
    fn fit_needs_signal() {
        let pts = vec![(0.01, 1.0), (0.02, 1.0), (0.03, 1.0), (0.04, 1.0 + 1e-3)];
        assert!(matches!(exponent_fit(&pts, 1.0), Err(Error::UndefinedFit(_))));
    }

    #[test]
    fn decay_of_geometric_sequence() {
        let f = FourierCosSeries::new((2..=20).map(|j| 0.5f64.powi(j)).collect()).unwrap();
        let r = spectral_decay(&f);
        assert_eq!(r.last_significant, Some(20));
        assert!((r.ratio.unwrap() - 0.5).abs() < 1e-12);
        let z = spectral_decay(&FourierCosSeries::zeros(8));
        assert_eq!(z.last_significant, None);
        assert_eq!(z.ratio, None);
    }

    #[test]
    fn circle_curvature_is_one() {
        let k = curvature_profile(&FourierCosSeries::zeros(8), 0.1, 1.0, 64).unwrap();
        assert!(k.values.iter().all(|v| (v - 1.0).abs() < 1e-15));
        let f = FourierCosSeries::mode(8, 2, 0.01).unwrap();
        assert!(curvature_profile(&f, 0.1, 1.0, 64).unwrap().min > 0.0);
    }
}
