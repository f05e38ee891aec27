//! Witness-based detection of quantum channels outside two convex classes:
//! completely co-positive maps ([`ccop`]) and bi-entangling operations ([`be`]).
//!
//! A channel is mapped to its Choi state, a witness operator is built from
//! that state, and its expectation value decides membership. [`measure`]
//! turns qubit witnesses into local Pauli measurements and simulates them
//! with finite shots.
//!
//! ```
//! use qcd::{be, channels, tolerance};
//!
//! let verdict = be::detect_non_be(&channels::gate_v(), tolerance::DETECTION).unwrap();
//! assert!(verdict.detected());
//! assert!((verdict.expectation() + 0.5).abs() < 1e-10);
//! ```

pub mod be;
pub mod ccop;
pub mod channels;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod measure;
pub mod random;
pub mod report;
pub mod tolerance;
mod verdict;

pub use error::{QcdError, Result};
pub use verdict::Verdict;
