//! C ABI for `gsqg-patch`.
//!
//! Every fallible function returns a [`GsqgStatus`]; on failure a message is
//! available from [`gsqg_last_error_message`] on the same thread. Objects are
//! opaque handles created by `*_new`/`*_solve` and released with the matching
//! `*_free`. Panics never cross the boundary and are reported as
//! [`GsqgStatus::Internal`].

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gsqg_patch::functional::{Mode, PatchGeometry, WindowPolicy};
use gsqg_patch::kernels::{riesz_constant, MultiplierTable};
use gsqg_patch::solver::{continue_branch, omega_star, w_star, SolutionBranch, SolverConfig};
use gsqg_patch::Error;

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GsqgStatus {
    Ok = 0,
    NullPointer = 1,
    Domain = 2,
    Aliasing = 3,
    DegenerateBoundary = 4,
    Divergence = 5,
    SingularSystem = 6,
    OutOfRange = 7,
    BufferTooSmall = 8,
    Internal = 9,
}

/// Solver settings; obtain defaults from [`gsqg_solver_config_default`].
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct GsqgSolverConfig {
    /// Truncation; unknowns are `a_2..a_J`.
    pub j: usize,
    /// Outer grid size.
    pub n: usize,
    /// Inner grid size.
    pub m: usize,
    pub tol: f64,
    pub max_iter: usize,
    pub fd_step: f64,
    /// `true` selects the corrected self-interaction window.
    pub corrected: bool,
}

/// One converged point of a branch.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct GsqgRecord {
    pub eps: f64,
    pub speed: f64,
    pub residual: f64,
    pub iters: usize,
    /// Number of coefficients `a_2..a_J`.
    pub n_coeffs: usize,
}

/// Opaque table of `β_j`, `γ_j`.
pub struct GsqgMultipliers(MultiplierTable);

/// Opaque continuation result.
pub struct GsqgBranch(SolutionBranch);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> GsqgStatus {
    match e {
        Error::Domain(_) | Error::ZeroEps | Error::UndefinedFit(_) => GsqgStatus::Domain,
        Error::Aliasing { .. } => GsqgStatus::Aliasing,
        Error::DegenerateBoundary { .. } | Error::SelfIntersection => GsqgStatus::DegenerateBoundary,
        Error::Divergence { .. } => GsqgStatus::Divergence,
        Error::SingularElimination(_) | Error::SingularJacobian => GsqgStatus::SingularSystem,
        Error::Io(_) | Error::Json(_) => GsqgStatus::Internal,
    }
}

/// Runs `f`, translating errors and panics into a status and the thread's error message.
fn guard(f: impl FnOnce() -> Result<(), (GsqgStatus, String)>) -> GsqgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            GsqgStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            GsqgStatus::Internal
        }
    }
}

fn lib<T>(r: gsqg_patch::Result<T>) -> Result<T, (GsqgStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (GsqgStatus, String) {
    (GsqgStatus::NullPointer, format!("{what} is null"))
}

unsafe fn out_ref<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, (GsqgStatus, String)> {
    p.as_mut().ok_or_else(|| null(what))
}

/// Message of the last failed call on this thread; empty after a success.
///
/// The pointer stays valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn gsqg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Co-rotating point-vortex angular velocity for `m` vortices at distance `d`.
///
/// # Safety
/// `out` must be null or valid for a write of one `double`.
#[no_mangle]
pub unsafe extern "C" fn gsqg_omega_star(alpha: f64, d: f64, m: usize, out: *mut f64) -> GsqgStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = lib(omega_star(alpha, d, m))?;
        Ok(())
    })
}

/// Travelling point-vortex pair speed.
///
/// # Safety
/// `out` must be null or valid for a write of one `double`.
#[no_mangle]
pub unsafe extern "C" fn gsqg_w_star(alpha: f64, d: f64, out: *mut f64) -> GsqgStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = lib(w_star(alpha, d))?;
        Ok(())
    })
}

/// Riesz constant `C_α`.
///
/// # Safety
/// `out` must be null or valid for a write of one `double`.
#[no_mangle]
pub unsafe extern "C" fn gsqg_riesz_constant(alpha: f64, out: *mut f64) -> GsqgStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = lib(riesz_constant(alpha))?;
        Ok(())
    })
}

/// Builds the multiplier table for `j = 1..=jmax`.
///
/// # Safety
/// `out` must be null or valid for a write of one pointer. The handle written
/// there must be released with [`gsqg_multipliers_free`].
#[no_mangle]
pub unsafe extern "C" fn gsqg_multipliers_new(alpha: f64, jmax: usize, out: *mut *mut GsqgMultipliers) -> GsqgStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let t = lib(MultiplierTable::new(alpha, jmax))?;
        *out = Box::into_raw(Box::new(GsqgMultipliers(t)));
        Ok(())
    })
}

/// Largest index held by the table, or 0 for a null handle.
///
/// # Safety
/// `table` must be null or a live handle from [`gsqg_multipliers_new`].
#[no_mangle]
pub unsafe extern "C" fn gsqg_multipliers_jmax(table: *const GsqgMultipliers) -> usize {
    table.as_ref().map_or(0, |t| t.0.jmax())
}

/// `β_j` for `1 <= j <= jmax`.
///
/// # Safety
/// `table` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn gsqg_multipliers_beta(table: *const GsqgMultipliers, j: usize, out: *mut f64) -> GsqgStatus {
    guard(|| {
        let t = table.as_ref().ok_or_else(|| null("table"))?;
        let out = out_ref(out, "out")?;
        if j == 0 || j > t.0.jmax() {
            return Err((GsqgStatus::OutOfRange, format!("j = {j} outside 1..={}", t.0.jmax())));
        }
        *out = t.0.beta(j);
        Ok(())
    })
}

/// `γ_j` for `1 <= j <= jmax`; only defined for `α ∈ [1, 2)`.
///
/// # Safety
/// `table` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn gsqg_multipliers_gamma(table: *const GsqgMultipliers, j: usize, out: *mut f64) -> GsqgStatus {
    guard(|| {
        let t = table.as_ref().ok_or_else(|| null("table"))?;
        let out = out_ref(out, "out")?;
        if !t.0.has_gamma() {
            return Err((GsqgStatus::Domain, "gamma_j requires alpha in [1, 2)".into()));
        }
        if j == 0 || j > t.0.jmax() {
            return Err((GsqgStatus::OutOfRange, format!("j = {j} outside 1..={}", t.0.jmax())));
        }
        *out = t.0.gamma(j);
        Ok(())
    })
}

/// Releases a table. Null is ignored.
///
/// # Safety
/// `table` must be null or a handle from [`gsqg_multipliers_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gsqg_multipliers_free(table: *mut GsqgMultipliers) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Library defaults.
#[no_mangle]
pub extern "C" fn gsqg_solver_config_default() -> GsqgSolverConfig {
    let c = SolverConfig::default();
    GsqgSolverConfig {
        j: c.j,
        n: c.n,
        m: c.m,
        tol: c.tol,
        max_iter: c.max_iter,
        fd_step: c.fd_step,
        corrected: c.policy == WindowPolicy::Corrected,
    }
}

/// Continues a branch over `schedule[0..len]`. `m = 0` selects the travelling pair,
/// otherwise `m` co-rotating patches.
///
/// A branch that stops early is still returned with status `Ok`; inspect
/// [`gsqg_branch_terminated`].
///
/// # Safety
/// `config` must point to a valid config, `schedule` must be valid for `len`
/// reads, and `out` must be writable. Release the handle with [`gsqg_branch_free`].
#[no_mangle]
pub unsafe extern "C" fn gsqg_branch_solve(
    alpha: f64,
    d: f64,
    m: usize,
    config: *const GsqgSolverConfig,
    schedule: *const f64,
    len: usize,
    out: *mut *mut GsqgBranch,
) -> GsqgStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        *out = ptr::null_mut();
        let c = config.as_ref().ok_or_else(|| null("config"))?;
        if schedule.is_null() && len > 0 {
            return Err(null("schedule"));
        }
        let schedule = if len == 0 { Vec::new() } else { std::slice::from_raw_parts(schedule, len).to_vec() };
        let cfg = SolverConfig {
            j: c.j,
            n: c.n,
            m: c.m,
            tol: c.tol,
            max_iter: c.max_iter,
            fd_step: c.fd_step,
            schedule,
            policy: if c.corrected { WindowPolicy::Corrected } else { WindowPolicy::Plain },
        };
        lib(cfg.validate())?;
        let mode = if m == 0 { Mode::Travelling } else { Mode::Corotating { m } };
        let geom = lib(PatchGeometry::new(alpha, d, mode, 0.0))?;
        let branch = lib(continue_branch(&geom, &cfg))?;
        *out = Box::into_raw(Box::new(GsqgBranch(branch)));
        Ok(())
    })
}

/// Number of converged records, or 0 for a null handle.
///
/// # Safety
/// `branch` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gsqg_branch_len(branch: *const GsqgBranch) -> usize {
    branch.as_ref().map_or(0, |b| b.0.records.len())
}

/// Whether the continuation stopped before the end of its schedule.
///
/// # Safety
/// `branch` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gsqg_branch_terminated(branch: *const GsqgBranch) -> bool {
    branch.as_ref().is_some_and(|b| b.0.termination.is_some())
}

/// Scalar data of record `index`.
///
/// # Safety
/// `branch` must be null or a live handle; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn gsqg_branch_record(branch: *const GsqgBranch, index: usize, out: *mut GsqgRecord) -> GsqgStatus {
    guard(|| {
        let b = branch.as_ref().ok_or_else(|| null("branch"))?;
        let out = out_ref(out, "out")?;
        let r = b.0.records.get(index).ok_or_else(|| {
            (GsqgStatus::OutOfRange, format!("record {index} outside 0..{}", b.0.records.len()))
        })?;
        *out = GsqgRecord {
            eps: r.eps,
            speed: r.speed,
            residual: r.residual,
            iters: r.iters,
            n_coeffs: r.coeffs.coeffs().len(),
        };
        Ok(())
    })
}

/// Copies `a_2..a_J` of record `index` into `buf`, which holds `cap` doubles.
///
/// # Safety
/// `branch` must be null or a live handle; `buf` must be valid for `cap` writes.
#[no_mangle]
pub unsafe extern "C" fn gsqg_branch_coeffs(
    branch: *const GsqgBranch,
    index: usize,
    buf: *mut f64,
    cap: usize,
) -> GsqgStatus {
    guard(|| {
        let b = branch.as_ref().ok_or_else(|| null("branch"))?;
        let r = b.0.records.get(index).ok_or_else(|| {
            (GsqgStatus::OutOfRange, format!("record {index} outside 0..{}", b.0.records.len()))
        })?;
        let a = r.coeffs.coeffs();
        if cap < a.len() {
            return Err((GsqgStatus::BufferTooSmall, format!("need {} doubles, got {cap}", a.len())));
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        std::slice::from_raw_parts_mut(buf, a.len()).copy_from_slice(a);
        Ok(())
    })
}

/// Releases a branch. Null is ignored.
///
/// # Safety
/// `branch` must be null or a handle from [`gsqg_branch_solve`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gsqg_branch_free(branch: *mut GsqgBranch) {
    if !branch.is_null() {
        drop(Box::from_raw(branch));
    }
}
