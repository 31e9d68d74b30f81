use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on the inputs was violated.
    #[error("domain error: {0}")]
    Domain(String),

    /// Power iteration exhausted its budget without the estimate settling.
    #[error("power iteration did not converge after {iters} steps (last estimate {estimate:.6e}, residual {residual:.3e})")]
    NonConvergent {
        iters: usize,
        estimate: f64,
        residual: f64,
    },

    /// The LU factorization hit an exactly zero pivot: λ is (numerically) an
    /// eigenvalue of the discretized problem.
    #[error("factorization of I + K is exactly singular at pivot {pivot}")]
    Singular { pivot: usize },

    /// Phase unwrapping along a contour could not be made reliable.
    #[error("contour too coarse or zero on contour (max phase step {max_step:.3} rad after {depth} refinements)")]
    ContourTooCoarse { max_step: f64, depth: usize },

    /// A window-growth test on an improper integral failed to stabilize.
    #[error("integral did not converge: {0}")]
    Divergent(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
