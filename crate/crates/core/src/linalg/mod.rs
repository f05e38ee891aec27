//! Dense complex linear algebra over multi-subsystem Hilbert spaces.

mod eig;
mod matrix;
mod state;
mod subsystems;
mod svd;

pub use eig::{hermitian_eig, HermitianEigen};
pub use matrix::{inner, kron, kron_vec, norm, pauli, ComplexMatrix, C64, I, ONE, ZERO};
pub use state::{max_entangled, permute_subsystems, Bipartition, PureState};
pub use subsystems::{partial_trace, partial_transpose, partial_transpose_many};
pub use svd::{schmidt_coefficients, singular_values};
