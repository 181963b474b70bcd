//! Spectral contour-dynamics solver for co-rotating and travelling patches of the
//! generalized surface quasi-geostrophic (gSQG) equation.
//!
//! A patch boundary is the polar curve `z(x) = ε R(x) (cos x, sin x)` with
//! `R = 1 + ε|ε|^α f(x)` and `f` an even cosine series without the `j = 0, 1`
//! modes. Stationarity in the co-rotating (or translating) frame reduces to a
//! scalar odd functional of `f`, solved by Newton iteration in coefficient
//! space and continued in `ε` from the point-vortex limit.
//!
//! Modules:
//! - [`spectral`]: cosine/sine series, grid transforms, Sobolev-type norms.
//! - [`kernels`]: Gamma function, Riesz constant, multipliers `β_j`, `γ_j`.
//! - [`functional`]: quadrature of the boundary functionals and a physical velocity oracle.
//! - [`solver`]: speed elimination, Newton, continuation.
//! - [`diagnostics`]: reconstruction, curvature, decay, exponent fits, oracle residuals.
//! - [`cli`]: command-line front end used by the `gsqg` binary.

pub mod cli;
pub mod diagnostics;
pub mod functional;
pub mod io;
pub mod kernels;
pub mod scalar;
pub mod solver;
pub mod spectral;
pub mod validate;

mod error;

pub use error::{Error, Result};
