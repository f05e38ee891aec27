//! Cyclic Jacobi eigensolver for small dense Hermitian matrices.
//!
//! Each rotation first removes the phase of the pivot with a diagonal unitary,
//! then applies a real Givens rotation to the resulting real symmetric 2×2 block.

use super::matrix::{ComplexMatrix, C64, ZERO};
use crate::error::{QcdError, Result};
use crate::tolerance;

const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with orthonormal eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: ComplexMatrix,
}

impl HermitianEigen {
    pub fn vector(&self, k: usize) -> Vec<C64> {
        self.vectors.column(k)
    }

    /// Σ λ_k v_k v_k†
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.values.len();
        let mut out = ComplexMatrix::zeros(n, n);
        for (k, &lambda) in self.values.iter().enumerate() {
            let v = self.vector(k);
            for i in 0..n {
                for j in 0..n {
                    out[(i, j)] += v[i] * v[j].conj() * lambda;
                }
            }
        }
        out
    }
}

fn off_diagonal_norm(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

pub fn hermitian_eig(m: &ComplexMatrix) -> Result<HermitianEigen> {
    let defect = m.hermiticity_defect();
    if defect > tolerance::CHECK {
        return Err(QcdError::NotHermitian {
            defect,
            tol: tolerance::CHECK,
        });
    }
    let n = m.rows();
    // symmetrize away the sub-tolerance defect so rotations stay exact
    let mut a = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            a[(i, j)] = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
        }
    }
    let mut v = ComplexMatrix::identity(n);

    let mut sweeps = 0;
    while off_diagonal_norm(&a) >= tolerance::JACOBI_OFF_DIAGONAL {
        if sweeps == MAX_SWEEPS {
            return Err(QcdError::NoConvergence { sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let values = order.iter().map(|&k| a[(k, k)].re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for i in 0..n {
            vectors[(i, dst)] = v[(i, src)];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// Zeroes a[p][q] with J = D·R, D = diag(.., e^{-iφ} at q, ..), R a real rotation.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    let phase = apq / b;
    let app = a[(p, p)].re;
    let aqq = a[(q, q)].re;

    let tau = (aqq - app) / (2.0 * b);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        -1.0 / (-tau + (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;

    let jpp = C64::new(c, 0.0);
    let jpq = C64::new(s, 0.0);
    let jqp = -phase.conj() * s;
    let jqq = phase.conj() * c;

    let n = a.rows();
    // A ← A J
    for i in 0..n {
        let (aip, aiq) = (a[(i, p)], a[(i, q)]);
        a[(i, p)] = aip * jpp + aiq * jqp;
        a[(i, q)] = aip * jpq + aiq * jqq;
    }
    // A ← J† A
    for j in 0..n {
        let (apj, aqj) = (a[(p, j)], a[(q, j)]);
        a[(p, j)] = jpp.conj() * apj + jqp.conj() * aqj;
        a[(q, j)] = jpq.conj() * apj + jqq.conj() * aqj;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = C64::new(app - t * b, 0.0);
    a[(q, q)] = C64::new(aqq + t * b, 0.0);
    // V ← V J
    for i in 0..n {
        let (vip, viq) = (v[(i, p)], v[(i, q)]);
        v[(i, p)] = vip * jpp + viq * jqp;
        v[(i, q)] = vip * jpq + viq * jqq;
    }
}
