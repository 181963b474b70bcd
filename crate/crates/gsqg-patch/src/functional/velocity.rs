//! Contour-dynamics velocity of a family of patches, evaluated in physical space.
//!
//! For counterclockwise curves `ξ(τ)`, `τ ∈ [0, 2π)`, with strengths `q`,
//!
//! `v(x) = −(C_α/2π) Σ q ∮ (ξ′(τ) − ξ′(σ)) / |x − ξ(τ)|^α dτ`,
//!
//! where the tangent `ξ′(σ)` is subtracted only when `x = ξ(σ)` lies on the
//! curve being integrated. Same-curve integrals use the punctured trapezoid
//! rule plus the leading even-part correction `−2ζ(α−2) c₂ h^{3−α}`; the odd
//! part of the local expansion cancels by symmetry.

use std::f64::consts::PI;

use crate::kernels::{riesz_constant, zeta};
use crate::{Error, Result};

/// Closed curve `center + points[k]` sampled at uniform parameter values `τ_k = 2πk/K`.
///
/// Points are stored relative to `center` so that differences of nearby nodes
/// and spectral derivatives keep full relative precision on small curves.
#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub center: [f64; 2],
    pub points: Vec<[f64; 2]>,
    pub strength: f64,
    /// Exact `ξ′, ξ″, ξ‴` at the nodes; spectral differentiation of `points` otherwise.
    pub derivatives: Option<[Vec<[f64; 2]>; 3]>,
}

impl Curve {
    pub fn new(center: [f64; 2], points: Vec<[f64; 2]>, strength: f64) -> Self {
        Self { center, points, strength, derivatives: None }
    }

    pub fn absolute(&self, k: usize) -> [f64; 2] {
        [self.center[0] + self.points[k][0], self.center[1] + self.points[k][1]]
    }
}

/// Where the velocity is wanted.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Target {
    /// Node `node` of curve `curve`.
    OnCurve { curve: usize, node: usize },
    /// A point off every curve.
    Point([f64; 2]),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VelocityOptions {
    /// Extra multiple of the local tangent added to the subtraction term.
    pub tangent_gauge: f64,
    /// Apply the `h^{3−α}` correction on same-curve integrals.
    pub correction: bool,
}

impl Default for VelocityOptions {
    fn default() -> Self {
        Self { tangent_gauge: 0.0, correction: true }
    }
}

/// First three parameter derivatives of periodic samples.
pub(crate) fn spectral_derivatives(u: &[f64]) -> [Vec<f64>; 3] {
    let n = u.len();
    let w = 2.0 * PI / n as f64;
    let ctab: Vec<f64> = (0..n).map(|i| (w * i as f64).cos()).collect();
    let stab: Vec<f64> = (0..n).map(|i| (w * i as f64).sin()).collect();
    let half = (n - 1) / 2;
    let mut a = vec![0.0; half + 1];
    let mut b = vec![0.0; half + 1];
    for j in 1..=half {
        for (i, &v) in u.iter().enumerate() {
            let k = (i * j) % n;
            a[j] += v * ctab[k];
            b[j] += v * stab[k];
        }
        a[j] *= 2.0 / n as f64;
        b[j] *= 2.0 / n as f64;
    }
    let mut out = [vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    for i in 0..n {
        for j in 1..=half {
            let k = (i * j) % n;
            let (c, s) = (ctab[k], stab[k]);
            let jf = j as f64;
            // d/dτ (a cos jτ + b sin jτ) = j(b cos jτ − a sin jτ)
            out[0][i] += jf * (b[j] * c - a[j] * s);
            out[1][i] += -jf * jf * (a[j] * c + b[j] * s);
            out[2][i] += -jf * jf * jf * (b[j] * c - a[j] * s);
        }
    }
    out
}

fn seg_intersect(p1: [f64; 2], p2: [f64; 2], q1: [f64; 2], q2: [f64; 2], slack: f64) -> bool {
    let cross = |o: [f64; 2], a: [f64; 2], b: [f64; 2]| (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
    let d1 = cross(q1, q2, p1);
    let d2 = cross(q1, q2, p2);
    let d3 = cross(p1, p2, q1);
    let d4 = cross(p1, p2, q2);
    ((d1 > slack && d2 < -slack) || (d1 < -slack && d2 > slack))
        && ((d3 > slack && d4 < -slack) || (d3 < -slack && d4 > slack))
}

/// Segment-pair sweep: true when all polygons are simple and mutually disjoint.
pub fn curves_simple_disjoint(curves: &[&[[f64; 2]]]) -> bool {
    let segs: Vec<(usize, usize, [f64; 2], [f64; 2])> = curves
        .iter()
        .enumerate()
        .flat_map(|(c, pts)| {
            let n = pts.len();
            (0..n).map(move |i| (c, i, pts[i], pts[(i + 1) % n]))
        })
        .collect();
    let bbox = |a: [f64; 2], b: [f64; 2]| [a[0].min(b[0]), a[0].max(b[0]), a[1].min(b[1]), a[1].max(b[1])];
    for (u, &(c1, i1, p1, p2)) in segs.iter().enumerate() {
        let b1 = bbox(p1, p2);
        for &(c2, i2, q1, q2) in &segs[u + 1..] {
            if c1 == c2 {
                let n = curves[c1].len();
                if (i1 + 1) % n == i2 || (i2 + 1) % n == i1 {
                    continue;
                }
            }
            let b2 = bbox(q1, q2);
            if b1[1] < b2[0] || b2[1] < b1[0] || b1[3] < b2[2] || b2[3] < b1[2] {
                continue;
            }
            if seg_intersect(p1, p2, q1, q2, 1e-12) {
                return false;
            }
        }
    }
    // disjoint interiors: no vertex of one curve inside another
    for (a, ca) in curves.iter().enumerate() {
        for (b, cb) in curves.iter().enumerate() {
            if a != b && point_in_polygon(ca[0], cb) {
                return false;
            }
        }
    }
    true
}

fn point_in_polygon(p: [f64; 2], poly: &[[f64; 2]]) -> bool {
    let mut inside = false;
    let n = poly.len();
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        if (a[1] > p[1]) != (b[1] > p[1]) {
            let x = a[0] + (p[1] - a[1]) * (b[0] - a[0]) / (b[1] - a[1]);
            if p[0] < x {
                inside = !inside;
            }
        }
    }
    inside
}

/// Velocity induced by `curves` at `targets`.
pub fn boundary_velocity(
    curves: &[Curve],
    alpha: f64,
    targets: &[Target],
    opts: &VelocityOptions,
) -> Result<Vec<[f64; 2]>> {
    let c = riesz_constant(alpha)?;
    if curves.iter().any(|cv| cv.points.len() < 8) {
        return Err(Error::Domain("curves need at least 8 samples".into()));
    }
    if curves
        .iter()
        .any(|cv| cv.derivatives.as_ref().is_some_and(|d| d.iter().any(|v| v.len() != cv.points.len())))
    {
        return Err(Error::Domain("derivative samples do not match the curve".into()));
    }
    let abs: Vec<Vec<[f64; 2]>> = curves.iter().map(|cv| (0..cv.points.len()).map(|k| cv.absolute(k)).collect()).collect();
    let polys: Vec<&[[f64; 2]]> = abs.iter().map(|p| p.as_slice()).collect();
    if !curves_simple_disjoint(&polys) {
        return Err(Error::SelfIntersection);
    }
    let derivs: Vec<[[Vec<f64>; 3]; 2]> = curves
        .iter()
        .map(|cv| match &cv.derivatives {
            Some(d) => {
                let comp = |i: usize, c: usize| d[i].iter().map(|p| p[c]).collect::<Vec<f64>>();
                [[comp(0, 0), comp(1, 0), comp(2, 0)], [comp(0, 1), comp(1, 1), comp(2, 1)]]
            }
            None => {
                let x: Vec<f64> = cv.points.iter().map(|p| p[0]).collect();
                let y: Vec<f64> = cv.points.iter().map(|p| p[1]).collect();
                [spectral_derivatives(&x), spectral_derivatives(&y)]
            }
        })
        .collect();
    let zc = zeta(alpha - 2.0);
    let mut out = Vec::with_capacity(targets.len());
    for t in targets {
        let (x, own) = match *t {
            Target::OnCurve { curve, node } => {
                let cv = curves
                    .get(curve)
                    .ok_or_else(|| Error::Domain(format!("no curve {curve}")))?;
                if node >= cv.points.len() {
                    return Err(Error::Domain(format!("no node {node} on curve {curve}")));
                }
                (cv.absolute(node), Some((curve, node)))
            }
            Target::Point(p) => (p, None),
        };
        let mut v = [0.0; 2];
        for (ci, cv) in curves.iter().enumerate() {
            let n = cv.points.len();
            let h = 2.0 * PI / n as f64;
            let [dx, dy] = &derivs[ci];
            let mut acc = [0.0; 2];
            match own {
                Some((oc, node)) if oc == ci => {
                    let t1 = [dx[0][node], dy[0][node]];
                    let sub = [t1[0] * (1.0 + opts.tangent_gauge), t1[1] * (1.0 + opts.tangent_gauge)];
                    let q = cv.points[node];
                    for k in (0..n).filter(|&k| k != node) {
                        let p = cv.points[k];
                        let r = ((q[0] - p[0]).powi(2) + (q[1] - p[1]).powi(2)).powf(-alpha / 2.0);
                        acc[0] += (dx[0][k] - sub[0]) * r;
                        acc[1] += (dy[0][k] - sub[1]) * r;
                    }
                    acc = [acc[0] * h, acc[1] * h];
                    if opts.correction {
                        let t2 = [dx[1][node], dy[1][node]];
                        let t3 = [dx[2][node], dy[2][node]];
                        let sp2 = t1[0] * t1[0] + t1[1] * t1[1];
                        let dot = t1[0] * t2[0] + t1[1] * t2[1];
                        let pre = sp2.powf(-alpha / 2.0);
                        for d in 0..2 {
                            let c2 = pre * (t3[d] / 2.0 - alpha / 2.0 * t2[d] * dot / sp2);
                            acc[d] -= 2.0 * zc * c2 * h.powf(3.0 - alpha);
                        }
                    }
                }
                _ => {
                    let rel = [x[0] - cv.center[0], x[1] - cv.center[1]];
                    for k in 0..n {
                        let p = cv.points[k];
                        let r = ((rel[0] - p[0]).powi(2) + (rel[1] - p[1]).powi(2)).powf(-alpha / 2.0);
                        acc[0] += dx[0][k] * r;
                        acc[1] += dy[0][k] * r;
                    }
                    acc = [acc[0] * h, acc[1] * h];
                }
            }
            v[0] += cv.strength * acc[0];
            v[1] += cv.strength * acc[1];
        }
        let pre = -c / (2.0 * PI);
        out.push([pre * v[0], pre * v[1]]);
    }
    Ok(out)
}
