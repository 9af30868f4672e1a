use crate::algebra::Algebra;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("algebra mismatch: {left:?} vs {right:?}")]
    TagMismatch { left: Algebra, right: Algebra },

    #[error("unsupported algebra dimension {0} (expected 1, 2, 4 or 8)")]
    BadDimension(usize),

    #[error("{op} requires {expected}, got {got:?}")]
    WrongAlgebra {
        op: &'static str,
        expected: &'static str,
        got: Algebra,
    },

    #[error("non-finite coordinate")]
    NonFinite,

    #[error("domain error: {0}")]
    Domain(String),

    #[error("zero polynomial has no leading coefficient")]
    ZeroPolynomial,

    #[error("polynomial is not central")]
    NotCentral,

    #[error("point is not a root (potential {potential:e})")]
    NotARoot { potential: f64 },

    #[error("root finder did not converge after {sweeps} sweeps (max correction {max_step:e})")]
    NoConvergence { sweeps: usize, max_step: f64 },

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("sampler diagnostic failure: {0}")]
    Diagnostic(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}
