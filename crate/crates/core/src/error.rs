use thiserror::Error;

pub type Result<T> = std::result::Result<T, QcdError>;

#[derive(Debug, Error)]
pub enum QcdError {
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid dimension: {0}")]
    Dimension(String),

    #[error("matrix is not Hermitian (defect {defect:.3e} exceeds {tol:.1e})")]
    NotHermitian { defect: f64, tol: f64 },

    #[error("matrix is not unitary (max |U†U - I| = {deviation:.3e})")]
    NotUnitary { deviation: f64 },

    #[error("channel is not trace preserving (max |ΣK†K - I| = {deviation:.3e})")]
    NotTracePreserving { deviation: f64 },

    #[error("invalid subsystem layout: {0}")]
    Subsystem(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("no witness: partially transposed Choi matrix has λ_min = {lambda_min:.3e} (Choi is PPT)")]
    NoWitness { lambda_min: f64 },

    #[error("invalid channel spec: {0}")]
    Spec(String),

    #[error("non-finite number in {0}")]
    NonFinite(String),

    #[error("eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
}
