//! Singular values by one-sided (Hestenes) Jacobi orthogonalization, and the
//! Schmidt coefficients built on top of it.
//!
//! Column rotations keep tiny singular values accurate to roughly machine
//! precision in absolute terms, which is what the Schmidt tests need.

use super::matrix::{ComplexMatrix, C64};
use super::state::{permute_subsystems, Bipartition, PureState};
use crate::error::{QcdError, Result};

const MAX_SWEEPS: usize = 100;
const ORTHOGONALITY: f64 = 1e-15;

/// Singular values in descending order; `min(rows, cols)` of them.
pub fn singular_values(m: &ComplexMatrix) -> Result<Vec<f64>> {
    // work on whichever orientation has fewer columns
    let work = if m.cols() > m.rows() { m.adjoint() } else { m.clone() };
    let rows = work.rows();
    let ncols = work.cols();
    let mut cols: Vec<Vec<C64>> = (0..ncols).map(|j| work.column(j)).collect();

    let mut sweeps = 0;
    loop {
        let mut rotated = false;
        for i in 0..ncols {
            for j in i + 1..ncols {
                let alpha: f64 = cols[i].iter().map(|x| x.norm_sqr()).sum();
                let beta: f64 = cols[j].iter().map(|x| x.norm_sqr()).sum();
                let gamma: C64 = cols[i].iter().zip(&cols[j]).map(|(a, b)| a.conj() * b).sum();
                let g = gamma.norm();
                if g == 0.0 || g <= ORTHOGONALITY * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                // rotate col j by e^{-iφ} so the overlap becomes real
                let phase = (gamma / g).conj();
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for k in 0..rows {
                    let xi = cols[i][k];
                    let xj = cols[j][k] * phase;
                    cols[i][k] = xi * c - xj * s;
                    cols[j][k] = xi * s + xj * c;
                }
            }
        }
        if !rotated {
            break;
        }
        sweeps += 1;
        if sweeps == MAX_SWEEPS {
            return Err(QcdError::NoConvergence { sweeps });
        }
    }

    let mut values: Vec<f64> = cols
        .iter()
        .map(|c| c.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt())
        .collect();
    values.sort_by(|a, b| b.total_cmp(a));
    Ok(values)
}

/// Schmidt coefficients of `v` across `cut`, in descending order.
///
/// The state is reordered to put the left subsystems first, then reshaped into
/// a (left dimension) × (right dimension) coefficient matrix.
pub fn schmidt_coefficients(v: &PureState, cut: &Bipartition) -> Result<Vec<f64>> {
    if cut.n_subsystems() != v.n_subsystems() {
        return Err(QcdError::Subsystem(format!(
            "bipartition {cut} covers {} subsystems, state has {}",
            cut.n_subsystems(),
            v.n_subsystems()
        )));
    }
    let reordered = permute_subsystems(v, &cut.ordering())?;
    let left: usize = cut.left().iter().map(|&k| v.dims()[k]).product();
    let right = v.dim() / left;
    let m = ComplexMatrix::from_vec(left, right, reordered.into_amplitudes())?;
    singular_values(&m)
}
