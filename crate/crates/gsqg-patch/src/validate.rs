//! Pass/fail validation report over constants, multipliers, branches and the
//! physical-space oracle.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::diagnostics::{
    curvature_profile, exponent_fit, normal_velocity_residual, spectral_decay,
};
use crate::functional::{
    eval_G_limit, BoundaryShape, Evaluator, GateauxMethod, Mode, PatchGeometry, QuadratureScheme,
};
use crate::kernels::{beta_multiplier, MultiplierTable};
use crate::solver::{
    continue_branch, geometric_schedule, omega_star, reflect_solution, speed_star, w_star, Problem,
    SolutionBranch, SolverConfig,
};
use crate::spectral::FourierCosSeries;
use crate::{io, Result};

/// One line of the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub criterion: u32,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: SolverConfig,
    pub checks: Vec<Check>,
    pub passed: usize,
    pub failed: usize,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }
}

/// Branch configurations of the suite: `(α, mode)`.
pub fn branch_cases() -> Vec<(f64, Mode)> {
    vec![
        (1.0, Mode::Corotating { m: 2 }),
        (1.0, Mode::Corotating { m: 3 }),
        (1.5, Mode::Corotating { m: 2 }),
        (1.0, Mode::Travelling),
        (1.5, Mode::Travelling),
    ]
}

/// Suite configuration: defaults with 10 geometric points on `[5e−3, 5e−2]`.
pub fn suite_config() -> SolverConfig {
    SolverConfig { schedule: geometric_schedule(5e-3, 5e-2, 10), ..SolverConfig::default() }
}

struct Collector(Vec<Check>);

impl Collector {
    fn push(&mut self, criterion: u32, name: &str, passed: bool, detail: String) {
        self.0.push(Check { criterion, name: name.into(), passed, detail });
    }
}

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
        return left + right + (left + right - whole) / 15.0;
    }
    simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(f, a, b, fa, fm, fb, whole, tol, 40)
}

/// `∫₀^{2π} (1 − cos jy) / sin(y/2)^α dy` by adaptive Simpson after `y = πt²` on each half.
pub fn beta_by_quadrature(alpha: f64, j: usize) -> f64 {
    let jf = j as f64;
    let g = |t: f64| {
        if t == 0.0 {
            return 0.0;
        }
        let y = PI * t * t;
        2.0 * PI * t * (1.0 - (jf * y).cos()) / (y / 2.0).sin().powf(alpha)
    };
    2.0 * adaptive_simpson(&g, 0.0, 1.0, 1e-12)
}

fn constants(c: &mut Collector) -> Result<()> {
    let o2 = omega_star(1.0, 1.0, 2)?;
    let o3 = omega_star(1.0, 1.0, 3)?;
    let w = w_star(1.0, 1.0)?;
    c.push(1, "omega_star(1,1,2) = -1/8", (o2 + 0.125).abs() <= 1e-14, format!("{o2:e}"));
    c.push(1, "omega_star(1,1,3) = -1/(2 sqrt 3)", (o3 + 0.5 / 3f64.sqrt()).abs() <= 1e-14, format!("{o3:e}"));
    c.push(1, "w_star(1,1) = 1/8", (w - 0.125).abs() <= 1e-14, format!("{w:e}"));
    let mut worst = 0.0f64;
    for alpha in [1.0, 1.25, 1.5, 1.75] {
        for d in [1.0, 2.0] {
            worst = worst.max((w_star(alpha, d)?.abs() - d * omega_star(alpha, d, 2)?.abs()).abs());
        }
    }
    c.push(1, "|w_star| = d |omega_star(m=2)|", worst <= 1e-14, format!("max deviation {worst:e}"));
    Ok(())
}

fn multipliers(c: &mut Collector) -> Result<()> {
    let mut worst = 0.0f64;
    for alpha in [0.5, 1.0, 1.5] {
        for j in 1..=16 {
            let b = beta_multiplier(alpha, j)?;
            worst = worst.max((b - beta_by_quadrature(alpha, j)).abs() / b);
        }
    }
    c.push(2, "beta_j closed form vs quadrature", worst <= 1e-6, format!("max relative error {worst:e}"));
    let mut mono = true;
    for alpha in [0.5, 1.0, 1.25, 1.5, 1.75] {
        let t = MultiplierTable::new(alpha, 64)?;
        mono &= (1..64).all(|j| t.beta(j + 1) > t.beta(j));
        if t.has_gamma() {
            mono &= (2..64).all(|j| t.gamma(j + 1) > t.gamma(j) && t.gamma(j) > 0.0);
        }
    }
    c.push(2, "beta_j and gamma_j strictly increasing", mono, String::new());
    let g2 = MultiplierTable::new(1.0, 2)?.gamma(2);
    let target = 8.0 / (3.0 * PI);
    c.push(
        2,
        "gamma_2(alpha=1) = 8/(3 pi)",
        (g2 - target).abs() <= 1e-12,
        format!("gamma_2 = {g2:.16e}, 2/(3 pi) = {:.16e}", 2.0 / (3.0 * PI)),
    );
    Ok(())
}

fn point_vortex(c: &mut Collector) -> Result<()> {
    let mut worst = 0.0f64;
    for alpha in [1.0, 1.5] {
        for m in [2, 3] {
            let g = PatchGeometry::corotating(alpha, 1.0, m, 0.0)?;
            worst = worst.max(eval_G_limit(omega_star(alpha, 1.0, m)?, &FourierCosSeries::zeros(8), &g)?.norm());
        }
        let g = PatchGeometry::travelling(alpha, 1.0, 0.0)?;
        worst = worst.max(eval_G_limit(w_star(alpha, 1.0)?, &FourierCosSeries::zeros(8), &g)?.norm());
    }
    c.push(3, "limit functional vanishes at the point-vortex speed", worst <= 1e-13, format!("{worst:e}"));
    Ok(())
}

fn linearization(c: &mut Collector) -> Result<()> {
    let q = QuadratureScheme::default();
    let mut fd_worst = 0.0f64;
    let mut lim_worst = 0.0f64;
    for (alpha, mode) in [(1.0, Mode::Corotating { m: 2 }), (1.5, Mode::Corotating { m: 3 }), (1.5, Mode::Travelling)] {
        let g = PatchGeometry::new(alpha, 1.0, mode, 1e-3)?;
        let speed = speed_star(&g)?;
        let table = MultiplierTable::new(alpha, 8)?;
        let shape = BoundaryShape::new(g, FourierCosSeries::zeros(8))?;
        let ev0 = Evaluator::new(&g.with_eps(0.0)?, &q)?;
        for j in 2..=8 {
            let h = FourierCosSeries::mode(8, j, 1.0)?;
            let want = table.gamma(j) * j as f64;
            let fd = crate::functional::gateaux(&shape, speed, &h, GateauxMethod::FiniteDifference(1e-4), &q)?;
            fd_worst = fd_worst.max((fd.coeff(j) - want).abs() / want);
            let lim = ev0.directional(0.0, &FourierCosSeries::zeros(8), &h, speed)?;
            lim_worst = lim_worst.max((lim.series.coeff(j) - want).abs() / want);
        }
    }
    c.push(4, "FD Gateaux at eps=1e-3 matches gamma_j j", fd_worst <= 5e-3, format!("max relative error {fd_worst:e}"));
    c.push(4, "eps=0 quadrature matches multipliers", lim_worst <= 1e-10, format!("max relative error {lim_worst:e}"));
    Ok(())
}

/// Runs one branch and appends criteria 5 to 8 for it.
fn branch_checks(c: &mut Collector, alpha: f64, mode: Mode, cfg: &SolverConfig) -> Result<SolutionBranch> {
    let tag = match mode {
        Mode::Corotating { m } => format!("alpha={alpha} corotating m={m}"),
        Mode::Travelling => format!("alpha={alpha} travelling"),
    };
    let geom = PatchGeometry::new(alpha, 1.0, mode, 0.0)?;
    let b = continue_branch(&geom, cfg)?;
    let complete = b.termination.is_none() && b.records.len() == cfg.schedule.len();
    let worst_res = b.records.iter().map(|r| r.residual).fold(0.0, f64::max);
    let nonzero = b.records.iter().filter(|r| r.eps > 0.0).all(|r| !r.coeffs.is_zero());
    c.push(
        5,
        &format!("{tag}: branch converges, residual <= 1e-9, f nonzero"),
        complete && worst_res <= 1e-9 && nonzero,
        format!("{} of {} records, worst residual {worst_res:e}", b.records.len(), cfg.schedule.len()),
    );
    let star = speed_star(&geom)?;
    let pts: Vec<(f64, f64)> = b.records.iter().map(|r| (r.eps, r.speed)).collect();
    match exponent_fit(&pts, star) {
        Ok(fit) => c.push(
            5,
            &format!("{tag}: speed exponent within 0.15 of alpha"),
            (fit.exponent - alpha).abs() <= 0.15,
            format!("exponent {:.4}, prefactor {:.4e}", fit.exponent, fit.prefactor),
        ),
        Err(e) => c.push(5, &format!("{tag}: speed exponent within 0.15 of alpha"), false, e.to_string()),
    }

    let fine = SolverConfig { n: 2 * cfg.n, m: 2 * cfg.m, ..cfg.clone() };
    let fine_problem = Problem::new(&geom, &fine)?;
    let mut oracle_ok = true;
    let mut refined_fewer = 0usize;
    let mut total = 0usize;
    let mut worst_oracle = 0.0f64;
    let mut convex = true;
    let mut decay_ok = true;
    let mut leak = 0.0f64;
    let mut reflect_worst = 0.0f64;
    let mut involution = true;
    let mut devs = Vec::new();
    let problem = Problem::new(&geom, cfg)?;
    for r in b.records.iter().filter(|r| r.eps > 0.0) {
        let coarse = normal_velocity_residual(r, &geom, cfg.n)?;
        let refined_rec = fine_problem.newton(r.eps, &r.coeffs)?;
        let refined = normal_velocity_residual(&refined_rec, &geom, fine.n)?;
        worst_oracle = worst_oracle.max(coarse);
        oracle_ok &= coarse <= 1e-3;
        total += 1;
        refined_fewer += usize::from(refined < coarse);

        let k = curvature_profile(&r.coeffs, r.eps, alpha, cfg.n)?;
        convex &= k.min > 0.0;
        devs.push((r.eps, k.max_deviation));
        decay_ok &= spectral_decay(&r.coeffs).last_significant.map_or(true, |l| l < cfg.j / 2);

        let e = problem.residual(r.eps, &r.coeffs)?;
        leak = leak.max(e.residual.leakage);
        let rf = reflect_solution(r);
        let ev = problem.evaluator().evaluate(rf.eps, &rf.coeffs, rf.speed)?;
        leak = leak.max(ev.leakage);
        reflect_worst = reflect_worst.max(ev.series.y0_norm());
        let back = reflect_solution(&rf);
        involution &= back.eps == r.eps && back.coeffs == r.coeffs && back.speed == r.speed;
    }
    c.push(6, &format!("{tag}: normal-velocity residual <= 1e-3"), oracle_ok, format!("worst {worst_oracle:e}"));
    c.push(
        6,
        &format!("{tag}: oracle residual decreases when N, M double"),
        refined_fewer == total,
        format!("{refined_fewer} of {total} records decrease"),
    );
    devs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let monotone = devs.windows(2).all(|w| w[0].1 < w[1].1);
    c.push(7, &format!("{tag}: min eps kappa > 0"), convex, String::new());
    c.push(7, &format!("{tag}: max|eps kappa - 1| decreases with eps"), monotone, String::new());
    c.push(7, &format!("{tag}: last significant mode < J/2"), decay_ok, String::new());
    c.push(8, &format!("{tag}: cosine leakage <= 1e-10"), leak <= 1e-10, format!("{leak:e}"));
    c.push(
        8,
        &format!("{tag}: reflected records re-verify to 2 tol, double reflection is identity"),
        reflect_worst <= 2.0 * cfg.tol && involution,
        format!("worst reflected residual {reflect_worst:e}"),
    );
    Ok(b)
}

/// Runs the suite with `cfg` for the branch criteria.
pub fn run(cfg: &SolverConfig) -> Result<Report> {
    cfg.validate()?;
    let mut c = Collector(Vec::new());
    constants(&mut c)?;
    multipliers(&mut c)?;
    point_vortex(&mut c)?;
    linearization(&mut c)?;
    let mut first = None;
    for (alpha, mode) in branch_cases() {
        let b = branch_checks(&mut c, alpha, mode, cfg)?;
        first.get_or_insert(b);
    }
    if let Some(b) = first {
        let geom = PatchGeometry::new(b.alpha, b.d, b.mode, 0.0)?;
        let again = continue_branch(&geom, cfg)?;
        let same = io::to_json(&b)? == io::to_json(&again)?;
        c.push(9, "identical runs give byte-identical branch JSON", same, String::new());
    }
    let passed = c.0.iter().filter(|k| k.passed).count();
    let failed = c.0.len() - passed;
    Ok(Report { config: cfg.clone(), checks: c.0, passed, failed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrature_beta_at_alpha_one() {
        for j in 1..=4 {
            let exact: f64 = (1..=j).map(|i| 8.0 / (2 * i - 1) as f64).sum();
            assert!((beta_by_quadrature(1.0, j) - exact).abs() < 1e-8 * exact);
        }
    }

    #[test]
    fn constant_checks_pass() {
        let mut c = Collector(Vec::new());
        constants(&mut c).unwrap();
        point_vortex(&mut c).unwrap();
        assert!(c.0.iter().all(|k| k.passed), "{:?}", c.0);
    }
}
