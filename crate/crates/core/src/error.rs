//! Crate-wide error type.
//!
//! All fallible kernels return [`Result`]. Variants carry enough context
//! (offending values, stability bounds, iteration counts) for a caller to
//! report the failure without re-deriving it.

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by the numerical kernels.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// A constructor or solver was handed a parameter outside its domain.
    #[error("invalid parameter {name}: {message} (got {value})")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        message: &'static str,
    },

    /// A size or shape mismatch between coupled arrays/grids.
    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    /// An explicit step was requested beyond its stability bound.
    #[error("time step {dt:.3e} exceeds the stability bound {bound:.3e} for {context}")]
    StepSizeUnstable {
        context: &'static str,
        dt: f64,
        bound: f64,
    },

    /// A linear system could not be solved (zero or near-zero pivot).
    #[error("singular linear system in {context}: pivot {pivot:.3e} at row {row}")]
    SingularSystem {
        context: &'static str,
        row: usize,
        pivot: f64,
    },

    /// An iterative procedure failed to converge.
    #[error("{context} did not converge after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence {
        context: &'static str,
        iterations: usize,
        residual: f64,
    },

    /// A computed quantity left the realm of finite floating-point numbers.
    #[error("non-finite value encountered in {context}")]
    NonFinite { context: &'static str },

    /// A geometric precondition failed (shape outside domain, too close to a
    /// wall, grid too coarse to resolve it, ...).
    #[error("geometry error: {message}")]
    Geometry { message: String },

    /// A network description is inconsistent (dangling junction edge,
    /// duplicate channel id, incompatible attachment, ...).
    #[error("network configuration error: {message}")]
    Network { message: String },
}

impl Error {
    /// Shorthand for [`Error::InvalidParameter`].
    pub fn invalid(name: &'static str, value: f64, message: &'static str) -> Self {
        Error::InvalidParameter {
            name,
            value,
            message,
        }
    }
}
