use thiserror::Error;

/// Errors reported by state construction, tensor algebra, and sampling.
///
/// Diagnostic magnitudes are carried as `f64` regardless of the working
/// scalar so the error type stays non-generic.
#[derive(Debug, Error)]
pub enum Error {
    #[error("tensor product requires at least one factor")]
    EmptyFactorList,

    #[error("tensor product factors must be all vectors or all matrices")]
    MixedFactorKinds,

    #[error("subsystem dimension {dim} is not supported; each factor needs d >= 2")]
    InvalidLocalDimension { dim: usize },

    #[error("at least one subsystem is required")]
    NoSubsystems,

    #[error("two-copy workspace needs {required} amplitudes, exceeding the cap of {cap}")]
    CapExceeded { required: u128, cap: usize },

    #[error("dense two-copy operator needs {rows} rows, exceeding the cap of {cap}")]
    DenseCapExceeded { rows: usize, cap: usize },

    #[error("state vector norm is {norm}, expected 1")]
    NotNormalized { norm: f64 },

    #[error("matrix is not Hermitian (max deviation {deviation})")]
    NotHermitian { deviation: f64 },

    #[error("matrix trace is {trace}, expected 1")]
    NotUnitTrace { trace: f64 },

    #[error("matrix has negative eigenvalue {min_eigenvalue}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("operator labelled as a projector is not idempotent (max deviation {deviation})")]
    NotIdempotent { deviation: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid subsystem subset: {reason}")]
    InvalidSubset { reason: String },

    #[error("concurrence needs at least two subsystems, got {n}")]
    TooFewSubsystems { n: usize },

    #[error("measurement must cover all {n} subsystems or all but one, got {measured}")]
    InvalidMeasuredCount { measured: usize, n: usize },

    #[error("sign string length {got} does not match {expected} subsystems")]
    SignStringLength { expected: usize, got: usize },

    #[error("shot count must be positive")]
    InvalidShots,

    #[error("visibility must lie in [0, 1], got {p}")]
    InvalidVisibility { p: f64 },

    #[error("mixedness estimate needs all subsystem pairs measured; odd-parity accounting is incomplete otherwise")]
    IncompleteMeasurement,

    #[error("cross-check failed: {left} vs {right} (tolerance {tol})")]
    CrossCheckFailed { left: f64, right: f64, tol: f64 },

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    EigenNoConvergence { sweeps: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
