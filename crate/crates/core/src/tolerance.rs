//! Numerical thresholds shared across the crate.

/// Hermiticity, normalization and unitarity checks.
pub const CHECK: f64 = 1e-10;

/// Default absolute threshold for an exact witness verdict.
pub const DETECTION: f64 = 1e-9;

/// Jacobi sweeps stop once the off-diagonal Frobenius norm falls below this.
pub const JACOBI_OFF_DIAGONAL: f64 = 1e-12;

/// Pauli coefficients below this magnitude are dropped.
pub const PAULI_DROP: f64 = 1e-12;

/// Two eigenvalues closer than this count as degenerate in reports.
pub const DEGENERACY: f64 = 1e-9;

/// Default number of standard errors for the sampled verdict.
pub const DEFAULT_K_SIGMA: f64 = 3.0;
