use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("degree cap exceeded: {degree} > {cap}")]
    DegreeCap { degree: usize, cap: usize },

    #[error("polynomial has degree {degree}, need at least {required}")]
    DegreeTooLow { degree: usize, required: usize },

    #[error("affine map is not invertible")]
    SingularAffineMap,

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("root solver did not converge after {iterations} iterations (worst residual {residual:e})")]
    NoConvergence {
        iterations: usize,
        residual: f64,
        best: Vec<Complex64>,
    },

    #[error("no strictly repelling fixed point found")]
    NoRepellingFixedPoint,

    #[error("inverse iteration aborted at step {step}: {diagnostic}")]
    OrbitAborted { step: usize, diagnostic: String },

    #[error("point not strictly outside")]
    NotOutside,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("equality without segment/circle shape; increase n")]
    EqualityWithoutShape,

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
