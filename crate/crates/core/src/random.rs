//! Random states, unitaries and channels for property tests and examples.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::channels::KrausChannel;
use crate::linalg::{inner, norm, ComplexMatrix, PureState, C64};

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im)
}

/// Haar-distributed unitary via Gram-Schmidt on a complex Ginibre matrix.
///
/// Gram-Schmidt leaves a positive real diagonal in R, which is the phase
/// convention that makes Q exactly Haar.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let mut cols: Vec<Vec<C64>> = Vec::with_capacity(n);
    while cols.len() < n {
        let mut v: Vec<C64> = (0..n).map(|_| gaussian(rng)).collect();
        for q in &cols {
            let proj = inner(q, &v);
            for (x, y) in v.iter_mut().zip(q) {
                *x -= proj * y;
            }
        }
        let nv = norm(&v);
        if nv < 1e-8 {
            continue;
        }
        cols.push(v.into_iter().map(|x| x / nv).collect());
    }
    let mut u = ComplexMatrix::zeros(n, n);
    for (j, col) in cols.iter().enumerate() {
        for i in 0..n {
            u[(i, j)] = col[i];
        }
    }
    u
}

/// Haar-random pure state over the given subsystem dimensions.
pub fn random_pure_state<R: Rng + ?Sized>(dims: &[usize], rng: &mut R) -> PureState {
    let n: usize = dims.iter().product();
    let amps = (0..n).map(|_| gaussian(rng)).collect();
    PureState::normalized(amps, dims.to_vec()).expect("Gaussian vector is nonzero")
}

/// Random density matrix G G† / Tr(G G†) with G an n×rank Ginibre matrix.
pub fn random_density_matrix<R: Rng + ?Sized>(n: usize, rank: usize, rng: &mut R) -> ComplexMatrix {
    let data = (0..n * rank).map(|_| gaussian(rng)).collect();
    let g = ComplexMatrix::from_vec(n, rank, data).unwrap();
    let rho = &g * &g.adjoint();
    let tr = rho.trace().re;
    rho.scale_real(1.0 / tr)
}

/// Random Hermitian matrix with Gaussian entries.
pub fn random_hermitian<R: Rng + ?Sized>(n: usize, rng: &mut R) -> ComplexMatrix {
    let data = (0..n * n).map(|_| gaussian(rng)).collect();
    let g = ComplexMatrix::from_vec(n, n, data).unwrap();
    (&g + &g.adjoint()).scale_real(0.5)
}

/// Random CPTP channel on a d-level system with `n_kraus` operators.
///
/// Takes the first d columns of a Haar unitary on d·n_kraus dimensions, an
/// isometry, and cuts it into d×d row blocks.
pub fn random_channel<R: Rng + ?Sized>(d: usize, n_kraus: usize, rng: &mut R) -> KrausChannel {
    let u = haar_unitary(d * n_kraus, rng);
    let ops = (0..n_kraus)
        .map(|k| {
            let mut op = ComplexMatrix::zeros(d, d);
            for i in 0..d {
                for j in 0..d {
                    op[(i, j)] = u[(k * d + i, j)];
                }
            }
            op
        })
        .collect();
    KrausChannel::new(ops, vec![d]).expect("isometry blocks form a valid channel")
}
