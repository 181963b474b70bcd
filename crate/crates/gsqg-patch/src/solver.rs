//! Speed elimination, Newton iteration on `a_2..a_J`, and continuation in `ε`.

use nalgebra::{DMatrix, DVector};
use serde::{Deserialize, Serialize};

use crate::diagnostics::RecordDiagnostics;
use crate::functional::{
    interaction_constant, BoundaryShape, Evaluation, Evaluator, Mode, PatchGeometry, QuadratureScheme,
    WindowPolicy,
};
use crate::kernels::{riesz_constant, MultiplierTable};
use crate::spectral::{analyze, FourierCosSeries, Parity};
use crate::{Error, Result};

/// Point-vortex angular velocity of the co-rotating `m`-gon:
/// `Ω* = Σ_i α C_α (cos θ_i − 1) / (2 ((cos θ_i − 1)² + sin² θ_i)^{1+α/2} d^{2+α})`.
pub fn omega_star(alpha: f64, d: f64, m: usize) -> Result<f64> {
    PatchGeometry::corotating(alpha, d, m, 0.0)?;
    Ok(-interaction_constant(alpha, d, m)? / d)
}

/// Point-vortex pair speed `W* = α C_α / (2 (2d)^{1+α})`.
pub fn w_star(alpha: f64, d: f64) -> Result<f64> {
    PatchGeometry::travelling(alpha, d, 0.0)?;
    Ok(alpha * riesz_constant(alpha)? / (2.0 * (2.0 * d).powf(1.0 + alpha)))
}

/// Point-vortex speed for the geometry's mode.
pub fn speed_star(geom: &PatchGeometry) -> Result<f64> {
    match geom.mode {
        Mode::Corotating { m } => omega_star(geom.alpha, geom.d, m),
        Mode::Travelling => w_star(geom.alpha, geom.d),
    }
}

/// Newton and continuation settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Truncation `J`; unknowns are `a_2..a_J`.
    pub j: usize,
    /// Outer grid `N`.
    pub n: usize,
    /// Inner grid `M`.
    pub m: usize,
    pub tol: f64,
    pub max_iter: usize,
    pub fd_step: f64,
    pub schedule: Vec<f64>,
    pub policy: WindowPolicy,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            j: 32,
            n: 256,
            m: 256,
            tol: 1e-10,
            max_iter: 25,
            fd_step: 1e-6,
            schedule: geometric_schedule(5e-3, 5e-2, 10),
            policy: WindowPolicy::Corrected,
        }
    }
}

/// `count` points from `start` to `stop` with constant ratio.
pub fn geometric_schedule(start: f64, stop: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![start];
    }
    let r = (stop / start).ln() / (count - 1) as f64;
    (0..count)
        .map(|i| if i + 1 == count { stop } else { start * (r * i as f64).exp() })
        .collect()
}

/// `count` equally spaced points from `start` to `stop`.
pub fn linear_schedule(start: f64, stop: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![start];
    }
    let h = (stop - start) / (count - 1) as f64;
    (0..count).map(|i| if i + 1 == count { stop } else { start + h * i as f64 }).collect()
}

impl SolverConfig {
    pub fn quadrature(&self) -> QuadratureScheme {
        QuadratureScheme { n: self.n, m: self.m, policy: self.policy }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.tol > 0.0) {
            return Err(Error::Domain(format!("tolerance must be positive, got {}", self.tol)));
        }
        if self.j < 2 {
            return Err(Error::Domain(format!("J must be >= 2, got {}", self.j)));
        }
        if self.n < 4 * (self.j + 1) {
            return Err(Error::Aliasing { n: self.n, j: self.j });
        }
        if !(self.fd_step > 0.0) {
            return Err(Error::Domain("fd step must be positive".into()));
        }
        self.quadrature().validate()?;
        if let Some(&e0) = self.schedule.first() {
            if !(0.0..=0.01).contains(&e0) {
                return Err(Error::Domain(format!("schedule must start in [0, 0.01], got {e0}")));
            }
        }
        if self.schedule.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Domain("schedule must be strictly increasing".into()));
        }
        Ok(())
    }
}

/// One converged continuation point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BranchRecord {
    pub eps: f64,
    pub speed: f64,
    /// Euclidean norm of `b_2..b_J` at the solution.
    pub residual: f64,
    pub iters: usize,
    pub coeffs: FourierCosSeries,
    /// Residual norm per Newton iterate.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub history: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnostics: Option<RecordDiagnostics>,
}

/// Why a continuation stopped early.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Termination {
    /// Schedule value that failed.
    pub eps: f64,
    /// Largest converged `ε` (empirical existence radius), if any.
    pub eps0: Option<f64>,
    pub message: String,
    pub history: Vec<f64>,
}

/// Ordered records of one continuation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionBranch {
    pub alpha: f64,
    pub d: f64,
    #[serde(flatten)]
    pub mode: Mode,
    pub config: SolverConfig,
    pub records: Vec<BranchRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub termination: Option<Termination>,
}

/// Evaluator plus multiplier table for repeated residual evaluations.
pub struct Problem {
    geom: PatchGeometry,
    cfg: SolverConfig,
    eval: Evaluator,
    table: MultiplierTable,
}

/// Speed and speed-eliminated residual.
#[derive(Debug, Clone, PartialEq)]
pub struct Eliminated {
    pub speed: f64,
    pub residual: Evaluation,
}

fn eliminate(ev: &Evaluator, eps: f64, f: &FourierCosSeries) -> Result<Eliminated> {
    let c = ev.components(eps, f)?;
    let g0: Vec<f64> = c.self_term.iter().zip(&c.cross_term).map(|(a, b)| a + b).collect();
    let s1 = analyze(&c.frame, Parity::Odd).coeffs[1];
    let g1 = analyze(&g0, Parity::Odd).coeffs[1];
    let scale = c.frame.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if !(s1.abs() > 1e-12 * scale.max(1e-300)) {
        return Err(Error::SingularElimination(s1));
    }
    let speed = -g1 / s1;
    let grid: Vec<f64> = g0.iter().zip(&c.frame).map(|(g, s)| g + speed * s).collect();
    let a = analyze(&grid, Parity::Odd);
    let series = a.sin_series(f.truncation().max(1))?;
    Ok(Eliminated { speed, residual: Evaluation { series, grid, leakage: a.leakage } })
}

/// Solves `b₁(G) = 0` (or `b₁(H) = 0`) for the speed at the shape's `ε` and `f`.
pub fn eliminate_speed(shape: &BoundaryShape, quad: &QuadratureScheme) -> Result<Eliminated> {
    let ev = Evaluator::new(&shape.geometry, quad)?;
    eliminate(&ev, shape.geometry.eps, &shape.f)
}

impl Problem {
    /// `geom.eps` is ignored; each call supplies its own `ε`.
    pub fn new(geom: &PatchGeometry, cfg: &SolverConfig) -> Result<Self> {
        geom.validate()?;
        cfg.validate()?;
        if !(1.0..2.0).contains(&geom.alpha) {
            return Err(Error::Domain(format!("solver needs alpha in [1,2), got {}", geom.alpha)));
        }
        Ok(Self {
            geom: *geom,
            cfg: cfg.clone(),
            eval: Evaluator::new(geom, &cfg.quadrature())?,
            table: MultiplierTable::new(geom.alpha, cfg.j)?,
        })
    }

    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    pub fn geometry(&self) -> &PatchGeometry {
        &self.geom
    }

    pub fn evaluator(&self) -> &Evaluator {
        &self.eval
    }

    /// Speed-eliminated residual at `(ε, f)`.
    pub fn residual(&self, eps: f64, f: &FourierCosSeries) -> Result<Eliminated> {
        eliminate(&self.eval, eps, &f.resized(self.cfg.j))
    }

    fn unknowns(&self, eps: f64, f: &FourierCosSeries) -> Result<(f64, DVector<f64>)> {
        let e = self.residual(eps, f)?;
        let b = e.residual.series.coeffs();
        Ok((e.speed, DVector::from_iterator(self.cfg.j - 1, b[1..].iter().copied())))
    }

    /// Central-difference Jacobian of `b_2..b_J` with respect to `a_2..a_J`.
    pub fn jacobian(&self, eps: f64, f: &FourierCosSeries) -> Result<DMatrix<f64>> {
        let nj = self.cfg.j - 1;
        let t = self.cfg.fd_step;
        let mut jac = DMatrix::zeros(nj, nj);
        for c in 0..nj {
            let j = c + 2;
            let mut fp = f.clone();
            fp.set_coeff(j, f.coeff(j) + t);
            let mut fm = f.clone();
            fm.set_coeff(j, f.coeff(j) - t);
            let (_, rp) = self.unknowns(eps, &fp)?;
            let (_, rm) = self.unknowns(eps, &fm)?;
            jac.set_column(c, &((rp - rm) / (2.0 * t)));
        }
        Ok(jac)
    }

    /// Newton iteration from `f_init` at fixed `ε`.
    pub fn newton(&self, eps: f64, f_init: &FourierCosSeries) -> Result<BranchRecord> {
        if eps == 0.0 {
            return Ok(BranchRecord {
                eps,
                speed: speed_star(&self.geom)?,
                residual: 0.0,
                iters: 0,
                coeffs: FourierCosSeries::zeros(self.cfg.j),
                history: vec![0.0],
                diagnostics: None,
            });
        }
        let nj = self.cfg.j - 1;
        // rows scaled by 1/(γ_j j) so the limit Jacobian is the identity
        let pre = DVector::from_iterator(nj, (2..=self.cfg.j).map(|j| 1.0 / (self.table.gamma(j) * j as f64)));
        let mut f = f_init.resized(self.cfg.j);
        let mut history = Vec::new();
        for iter in 0..=self.cfg.max_iter {
            let (speed, r) = self.unknowns(eps, &f)?;
            let norm = r.norm();
            history.push(norm);
            if !norm.is_finite() {
                break;
            }
            if norm <= self.cfg.tol {
                return Ok(BranchRecord {
                    eps,
                    speed,
                    residual: norm,
                    iters: iter,
                    coeffs: f,
                    history,
                    diagnostics: None,
                });
            }
            if iter == self.cfg.max_iter || (iter > 0 && norm > 1e3 * history[0].max(self.cfg.tol)) {
                break;
            }
            let mut jac = self.jacobian(eps, &f)?;
            for (i, p) in pre.iter().enumerate() {
                jac.row_mut(i).scale_mut(*p);
            }
            let rhs = -r.component_mul(&pre);
            let step = jac.lu().solve(&rhs).ok_or(Error::SingularJacobian)?;
            for (c, ds) in step.iter().enumerate() {
                f.set_coeff(c + 2, f.coeff(c + 2) + ds);
            }
        }
        Err(Error::Divergence { eps, history })
    }
}

/// Single Newton solve at `ε` from `f_init`.
pub fn newton_solve(
    eps: f64,
    f_init: &FourierCosSeries,
    geom: &PatchGeometry,
    config: &SolverConfig,
) -> Result<BranchRecord> {
    Problem::new(geom, config)?.newton(eps, f_init)
}

/// Continuation over `config.schedule`, stopping at the first failure.
pub fn continue_branch(geom: &PatchGeometry, config: &SolverConfig) -> Result<SolutionBranch> {
    let problem = Problem::new(geom, config)?;
    let mut records: Vec<BranchRecord> = Vec::new();
    let mut termination = None;
    let mut f = FourierCosSeries::zeros(config.j);
    for &eps in &config.schedule {
        match problem.newton(eps, &f) {
            Ok(rec) => {
                f = rec.coeffs.clone();
                records.push(rec);
            }
            Err(e) => {
                let history = match &e {
                    Error::Divergence { history, .. } => history.clone(),
                    _ => Vec::new(),
                };
                termination = Some(Termination {
                    eps,
                    eps0: records.last().map(|r| r.eps),
                    message: e.to_string(),
                    history,
                });
                break;
            }
        }
    }
    Ok(SolutionBranch {
        alpha: geom.alpha,
        d: geom.d,
        mode: geom.mode,
        config: config.clone(),
        records,
        termination,
    })
}

/// The same patch family described with `−ε`: since `−εR(x) e(x) = εR(x+π) e(x+π)`,
/// the coefficients become `−(−1)^j a_j` and the speed is unchanged.
pub fn reflect_solution(record: &BranchRecord) -> BranchRecord {
    let mut coeffs = record.coeffs.clone();
    for j in 2..=coeffs.truncation() {
        let s = if j % 2 == 0 { -1.0 } else { 1.0 };
        coeffs.set_coeff(j, s * record.coeffs.coeff(j));
    }
    BranchRecord { eps: -record.eps, coeffs, diagnostics: None, ..record.clone() }
}
