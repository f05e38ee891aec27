use std::fmt;

use super::matrix::{kron_vec, norm, ComplexMatrix, C64, ZERO};
use crate::error::{QcdError, Result};
use crate::tolerance;

/// Normalized vector on a tensor product of subsystems.
///
/// Basis labels are big-endian: subsystem 0 is the most significant digit.
#[derive(Clone, Debug, PartialEq)]
pub struct PureState {
    amplitudes: Vec<C64>,
    dims: Vec<usize>,
}

impl PureState {
    pub fn new(amplitudes: Vec<C64>, dims: Vec<usize>) -> Result<Self> {
        let total: usize = dims.iter().product();
        if dims.is_empty() || dims.contains(&0) {
            return Err(QcdError::Dimension(format!("bad subsystem dims {dims:?}")));
        }
        if total != amplitudes.len() {
            return Err(QcdError::Shape(format!(
                "dims {dims:?} need {total} amplitudes, got {}",
                amplitudes.len()
            )));
        }
        let n = norm(&amplitudes);
        if (n * n - 1.0).abs() > tolerance::CHECK {
            return Err(QcdError::Parameter(format!(
                "state is not normalized (squared norm {})",
                n * n
            )));
        }
        Ok(Self { amplitudes, dims })
    }

    /// Scales `amplitudes` to unit norm before validating.
    pub fn normalized(amplitudes: Vec<C64>, dims: Vec<usize>) -> Result<Self> {
        let n = norm(&amplitudes);
        if n == 0.0 || !n.is_finite() {
            return Err(QcdError::Parameter("cannot normalize a zero vector".into()));
        }
        Self::new(amplitudes.into_iter().map(|a| a / n).collect(), dims)
    }

    /// Computational basis vector with digit `digits[k]` on subsystem `k`.
    pub fn basis(digits: &[usize], dims: &[usize]) -> Result<Self> {
        if digits.len() != dims.len() || digits.iter().zip(dims).any(|(d, n)| d >= n) {
            return Err(QcdError::Subsystem(format!(
                "basis label {digits:?} incompatible with dims {dims:?}"
            )));
        }
        let mut amps = vec![ZERO; dims.iter().product()];
        amps[flat_index(digits, dims)] = C64::new(1.0, 0.0);
        Self::new(amps, dims.to_vec())
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn n_subsystems(&self) -> usize {
        self.dims.len()
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn norm(&self) -> f64 {
        norm(&self.amplitudes)
    }

    pub fn projector(&self) -> ComplexMatrix {
        ComplexMatrix::outer(&self.amplitudes)
    }

    pub fn tensor(&self, other: &PureState) -> PureState {
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        PureState {
            amplitudes: kron_vec(&self.amplitudes, &other.amplitudes),
            dims,
        }
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }
}

/// Splits the subsystems of a multipartite space into two nonempty groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bipartition {
    left: Vec<usize>,
    right: Vec<usize>,
}

impl Bipartition {
    /// `left` lists subsystem indices; the right side is the complement in `0..n`.
    pub fn new(left: &[usize], n: usize) -> Result<Self> {
        let mut l = left.to_vec();
        l.sort_unstable();
        l.dedup();
        if l.len() != left.len() {
            return Err(QcdError::Subsystem(format!("repeated index in {left:?}")));
        }
        if let Some(&bad) = l.iter().find(|&&k| k >= n) {
            return Err(QcdError::Subsystem(format!(
                "subsystem {bad} out of range for {n} subsystems"
            )));
        }
        let r: Vec<usize> = (0..n).filter(|k| !l.contains(k)).collect();
        if l.is_empty() || r.is_empty() {
            return Err(QcdError::Subsystem(
                "both sides of a bipartition must be nonempty".into(),
            ));
        }
        Ok(Self { left: l, right: r })
    }

    /// AC|BD: separable channels.
    pub fn ac_bd() -> Self {
        Self::new(&[0, 2], 4).unwrap()
    }

    /// AD|BC: swap followed by a separable channel.
    pub fn ad_bc() -> Self {
        Self::new(&[0, 3], 4).unwrap()
    }

    /// AB|CD: entanglement-breaking channels.
    pub fn ab_cd() -> Self {
        Self::new(&[0, 1], 4).unwrap()
    }

    pub fn left(&self) -> &[usize] {
        &self.left
    }

    pub fn right(&self) -> &[usize] {
        &self.right
    }

    pub fn n_subsystems(&self) -> usize {
        self.left.len() + self.right.len()
    }

    /// Left indices followed by right indices.
    pub fn ordering(&self) -> Vec<usize> {
        self.left.iter().chain(&self.right).copied().collect()
    }
}

impl fmt::Display for Bipartition {
    /// Letters A, B, C, ... for subsystems 0, 1, 2, ...
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let label = |ks: &[usize]| -> String {
            ks.iter()
                .map(|&k| {
                    if k < 26 {
                        char::from(b'A' + k as u8).to_string()
                    } else {
                        format!("[{k}]")
                    }
                })
                .collect()
        };
        write!(f, "{}|{}", label(&self.left), label(&self.right))
    }
}

/// |α⟩ = (1/√d) Σ_k |k⟩|k⟩ on two d-level systems.
pub fn max_entangled(d: usize) -> Result<PureState> {
    if d < 2 {
        return Err(QcdError::Dimension(format!(
            "maximally entangled state needs d >= 2, got {d}"
        )));
    }
    let mut amps = vec![ZERO; d * d];
    let a = C64::new(1.0 / (d as f64).sqrt(), 0.0);
    for k in 0..d {
        amps[k * d + k] = a;
    }
    PureState::new(amps, vec![d, d])
}

pub(crate) fn strides(dims: &[usize]) -> Vec<usize> {
    let mut s = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        s[k] = s[k + 1] * dims[k + 1];
    }
    s
}

pub(crate) fn flat_index(digits: &[usize], dims: &[usize]) -> usize {
    digits
        .iter()
        .zip(dims)
        .fold(0, |acc, (&digit, &dim)| acc * dim + digit)
}

pub(crate) fn digits_of(mut index: usize, dims: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; dims.len()];
    for k in (0..dims.len()).rev() {
        digits[k] = index % dims[k];
        index /= dims[k];
    }
    digits
}

fn check_permutation(perm: &[usize], n: usize) -> Result<()> {
    if perm.len() != n {
        return Err(QcdError::Subsystem(format!(
            "permutation {perm:?} has length {}, expected {n}",
            perm.len()
        )));
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n || seen[p] {
            return Err(QcdError::Subsystem(format!("{perm:?} is not a permutation")));
        }
        seen[p] = true;
    }
    Ok(())
}

/// Reorders subsystems so that new subsystem `k` is old subsystem `perm[k]`.
pub fn permute_subsystems(v: &PureState, perm: &[usize]) -> Result<PureState> {
    check_permutation(perm, v.n_subsystems())?;
    let old_dims = v.dims();
    let new_dims: Vec<usize> = perm.iter().map(|&p| old_dims[p]).collect();
    let old_strides = strides(old_dims);
    let mut out = vec![ZERO; v.dim()];
    for (new_index, slot) in out.iter_mut().enumerate() {
        let digits = digits_of(new_index, &new_dims);
        let old_index: usize = digits
            .iter()
            .zip(perm)
            .map(|(&digit, &p)| digit * old_strides[p])
            .sum();
        *slot = v.amplitudes()[old_index];
    }
    Ok(PureState {
        amplitudes: out,
        dims: new_dims,
    })
}
