#![allow(dead_code)]

//! Independent oracles shared by the integration tests.
//!
//! Eigenvalues and singular values come from nalgebra; partial transposes and
//! Choi vectors are written out with explicit index loops.

use nalgebra::DMatrix;
use num_complex::Complex64;
use qcd::linalg::{ComplexMatrix, C64};

pub fn to_na(m: &ComplexMatrix) -> DMatrix<Complex64> {
    DMatrix::from_fn(m.rows(), m.cols(), |i, j| m[(i, j)])
}

/// Ascending eigenvalues of a Hermitian matrix via nalgebra.
pub fn oracle_eigenvalues(m: &ComplexMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = to_na(m).symmetric_eigenvalues().iter().copied().collect();
    v.sort_by(|a, b| a.total_cmp(b));
    v
}

/// Descending singular values via nalgebra.
pub fn oracle_singular_values(m: &ComplexMatrix) -> Vec<f64> {
    let mut v: Vec<f64> = to_na(m).singular_values().iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// ⟨ij|ρ^{T_A}|kl⟩ = ⟨kj|ρ|il⟩ on a d×d bipartite space.
pub fn oracle_pt_first(m: &ComplexMatrix, d: usize) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for l in 0..d {
                    out[(i * d + j, k * d + l)] = m[(k * d + j, i * d + l)];
                }
            }
        }
    }
    out
}

/// Coefficient matrix of the Choi vector of a two-qudit gate across a 2|2 cut,
/// built straight from ⟨ijkl|U⟩ = U[(ij),(kl)] / d.
pub fn oracle_choi_reshape(u: &ComplexMatrix, d: usize, left: [usize; 2]) -> ComplexMatrix {
    let right: Vec<usize> = (0..4).filter(|k| !left.contains(k)).collect();
    let mut m = ComplexMatrix::zeros(d * d, d * d);
    for a in 0..d {
        for b in 0..d {
            for c in 0..d {
                for e in 0..d {
                    let digits = [a, b, c, e];
                    let amp = u[(a * d + b, c * d + e)] / d as f64;
                    let row = digits[left[0]] * d + digits[left[1]];
                    let col = digits[right[0]] * d + digits[right[1]];
                    m[(row, col)] = amp;
                }
            }
        }
    }
    m
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}
