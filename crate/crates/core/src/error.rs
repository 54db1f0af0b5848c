use thiserror::Error;

/// Errors raised by the numerical kernels and the state/correlation layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |m - m^dagger| = {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("state is not positive semidefinite (smallest eigenvalue {min_eigenvalue:e})")]
    NotPositive { min_eigenvalue: f64 },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("trace is not 1 (got {trace_re} + {trace_im}i)")]
    TraceNotOne { trace_re: f64, trace_im: f64 },

    #[error("matrix contains a non-finite entry")]
    NonFinite,

    #[error("{name} = {value} is outside its domain {domain}")]
    OutOfDomain {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("reduced state of B is rank-1; the channel is undefined off its support")]
    DegenerateMarginal,

    #[error("state has rank {rank} > 2 (third eigenvalue {third_eigenvalue:e})")]
    RankTooHigh { rank: usize, third_eigenvalue: f64 },

    #[error("closed-form denominator vanishes ({value:e}); use the pipeline path")]
    DegenerateDenominator { value: f64 },

    #[error("internal consistency violated: {0}")]
    Inconsistent(String),

    #[error("invalid state JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;
