use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter lies outside its admissible range.
    #[error("domain error: {0}")]
    Domain(String),

    /// Grid too coarse for the series being synthesized or analyzed.
    #[error("aliasing: grid size {n} < 4(J+1) with J = {j}")]
    Aliasing { n: usize, j: usize },

    /// `R(x) = 1 + ε|ε|^α f(x)` is not positive somewhere.
    #[error("degenerate boundary: min R = {min_r:e}")]
    DegenerateBoundary { min_r: f64 },

    /// The quadrature functional was called at `ε = 0`.
    #[error("eps = 0: use the limit functional")]
    ZeroEps,

    /// The speed coefficient of the `sin x` mode vanished.
    #[error("singular speed elimination: sin(x) coefficient of the speed term is {0:e}")]
    SingularElimination(f64),

    /// Newton iteration failed to reach the tolerance.
    #[error("newton diverged at eps = {eps}: residual history {history:?}")]
    Divergence { eps: f64, history: Vec<f64> },

    /// Not enough usable data for a power-law fit.
    #[error("undefined fit: {0}")]
    UndefinedFit(String),

    /// Reconstructed boundary is not a family of simple disjoint curves.
    #[error("self-intersecting patch family")]
    SelfIntersection,

    #[error("linear solve failed: singular Jacobian")]
    SingularJacobian,

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
