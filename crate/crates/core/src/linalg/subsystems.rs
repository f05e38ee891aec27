//! Subsystem-local operations on operators over a tensor product space.

use super::matrix::{ComplexMatrix, ZERO};
use super::state::{digits_of, flat_index};
use crate::error::{QcdError, Result};

fn check_square_over(m: &ComplexMatrix, dims: &[usize]) -> Result<()> {
    let total: usize = dims.iter().product();
    if !m.is_square() || m.rows() != total {
        return Err(QcdError::Shape(format!(
            "{}x{} matrix does not act on dims {dims:?} (total {total})",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

fn check_indices(indices: &[usize], n: usize) -> Result<()> {
    if let Some(&bad) = indices.iter().find(|&&k| k >= n) {
        return Err(QcdError::Subsystem(format!(
            "subsystem {bad} out of range for {n} subsystems"
        )));
    }
    Ok(())
}

/// Transposes the indices of one subsystem, leaving the others untouched.
pub fn partial_transpose(m: &ComplexMatrix, dims: &[usize], subsystem: usize) -> Result<ComplexMatrix> {
    partial_transpose_many(m, dims, &[subsystem])
}

/// Transposes the indices of every listed subsystem.
pub fn partial_transpose_many(
    m: &ComplexMatrix,
    dims: &[usize],
    subsystems: &[usize],
) -> Result<ComplexMatrix> {
    check_square_over(m, dims)?;
    check_indices(subsystems, dims.len())?;
    let n = m.rows();
    let mut out = ComplexMatrix::zeros(n, n);
    for row in 0..n {
        let r = digits_of(row, dims);
        for col in 0..n {
            let c = digits_of(col, dims);
            let (mut r2, mut c2) = (r.clone(), c.clone());
            for &k in subsystems {
                r2[k] = c[k];
                c2[k] = r[k];
            }
            out[(flat_index(&r2, dims), flat_index(&c2, dims))] = m[(row, col)];
        }
    }
    Ok(out)
}

/// Traces out every subsystem not listed in `keep`.
///
/// The kept subsystems stay in ascending index order.
pub fn partial_trace(m: &ComplexMatrix, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
    check_square_over(m, dims)?;
    check_indices(keep, dims.len())?;
    let mut kept: Vec<usize> = keep.to_vec();
    kept.sort_unstable();
    kept.dedup();
    let traced: Vec<usize> = (0..dims.len()).filter(|k| !kept.contains(k)).collect();
    let kept_dims: Vec<usize> = kept.iter().map(|&k| dims[k]).collect();
    let traced_dims: Vec<usize> = traced.iter().map(|&k| dims[k]).collect();
    let kept_total: usize = kept_dims.iter().product();
    let traced_total: usize = traced_dims.iter().product();

    let mut out = ComplexMatrix::zeros(kept_total, kept_total);
    let mut full = vec![0; dims.len()];
    for i in 0..kept_total {
        let di = digits_of(i, &kept_dims);
        for j in 0..kept_total {
            let dj = digits_of(j, &kept_dims);
            let mut acc = ZERO;
            for t in 0..traced_total {
                let dt = digits_of(t, &traced_dims);
                for (slot, &k) in kept.iter().enumerate() {
                    full[k] = di[slot];
                }
                for (slot, &k) in traced.iter().enumerate() {
                    full[k] = dt[slot];
                }
                let row = flat_index(&full, dims);
                for (slot, &k) in kept.iter().enumerate() {
                    full[k] = dj[slot];
                }
                let col = flat_index(&full, dims);
                acc += m[(row, col)];
            }
            out[(i, j)] = acc;
        }
    }
    Ok(out)
}
