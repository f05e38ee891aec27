//! Quantum channels in Kraus form, their Choi states, and the built-in
//! channels and gates used throughout the crate.
//!
//! Choi convention: the channel acts on the first factor and the reference
//! copy is the second, C = (M ⊗ I)[|α⟩⟨α|]. For a gate on qudits A and B the
//! four-partite ordering is A, B (outputs), C, D (references), with A paired
//! to C and B paired to D.

pub mod spec;

pub use spec::{ChannelInput, ChannelSpec};

use crate::error::{QcdError, Result};
use crate::linalg::{
    hermitian_eig, max_entangled, partial_transpose_many, pauli, ComplexMatrix, PureState, C64,
};
use crate::tolerance;

/// A completely positive map ρ → Σ K ρ K†.
#[derive(Clone, Debug)]
pub struct KrausChannel {
    ops: Vec<ComplexMatrix>,
    dims: Vec<usize>,
}

impl KrausChannel {
    /// Checks shapes only; trace preservation is checked by [`KrausChannel::validate`].
    pub fn new(ops: Vec<ComplexMatrix>, dims: Vec<usize>) -> Result<Self> {
        if ops.is_empty() {
            return Err(QcdError::Parameter("channel needs at least one Kraus operator".into()));
        }
        let d: usize = dims.iter().product();
        if dims.is_empty() || dims.contains(&0) {
            return Err(QcdError::Dimension(format!("bad channel dims {dims:?}")));
        }
        for (k, op) in ops.iter().enumerate() {
            if op.rows() != d || op.cols() != d {
                return Err(QcdError::Shape(format!(
                    "Kraus operator {k} is {}x{}, channel dimension is {d}",
                    op.rows(),
                    op.cols()
                )));
            }
        }
        Ok(Self { ops, dims })
    }

    pub fn kraus_ops(&self) -> &[ComplexMatrix] {
        &self.ops
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().product()
    }

    /// Largest entrywise deviation of Σ K†K from the identity.
    pub fn completeness_deviation(&self) -> f64 {
        let d = self.dim();
        let mut sum = ComplexMatrix::zeros(d, d);
        for k in &self.ops {
            sum = &sum + &(&k.adjoint() * k);
        }
        sum.max_abs_diff(&ComplexMatrix::identity(d))
    }

    /// Confirms trace preservation within the check tolerance.
    pub fn validate(&self) -> Result<()> {
        let deviation = self.completeness_deviation();
        if deviation > tolerance::CHECK {
            return Err(QcdError::NotTracePreserving { deviation });
        }
        Ok(())
    }

    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        let d = self.dim();
        if rho.rows() != d || rho.cols() != d {
            return Err(QcdError::Shape(format!(
                "{}x{} input for a channel of dimension {d}",
                rho.rows(),
                rho.cols()
            )));
        }
        let mut out = ComplexMatrix::zeros(d, d);
        for k in &self.ops {
            out = &out + &(&(k * rho) * &k.adjoint());
        }
        Ok(out)
    }

    /// The Choi state (M ⊗ I)[|α⟩⟨α|].
    pub fn choi(&self) -> Result<ChoiState> {
        self.validate()?;
        let d = self.dim();
        let alpha = max_entangled(d)?;
        let mut matrix = ComplexMatrix::zeros(d * d, d * d);
        for k in &self.ops {
            let lifted = crate::linalg::kron(k, &ComplexMatrix::identity(d));
            let v = lifted.matvec(alpha.amplitudes())?;
            matrix = &matrix + &ComplexMatrix::outer(&v);
        }
        let n = self.dims.len();
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&self.dims);
        ChoiState::new(matrix, dims, (0..n).collect(), (n..2 * n).collect())
    }

    /// The single Kraus operator when the channel is unitary.
    pub fn as_gate(&self) -> Option<GateSpec> {
        match self.ops.as_slice() {
            [u] => GateSpec::new(u.clone(), self.dims.clone()).ok(),
            _ => None,
        }
    }
}

/// Density operator on the doubled space with explicit output/reference roles.
#[derive(Clone, Debug)]
pub struct ChoiState {
    matrix: ComplexMatrix,
    dims: Vec<usize>,
    outputs: Vec<usize>,
    references: Vec<usize>,
}

impl ChoiState {
    pub fn new(
        matrix: ComplexMatrix,
        dims: Vec<usize>,
        outputs: Vec<usize>,
        references: Vec<usize>,
    ) -> Result<Self> {
        let total: usize = dims.iter().product();
        if !matrix.is_square() || matrix.rows() != total {
            return Err(QcdError::Shape(format!(
                "Choi matrix {}x{} does not match dims {dims:?}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let mut roles: Vec<usize> = outputs.iter().chain(&references).copied().collect();
        roles.sort_unstable();
        if roles != (0..dims.len()).collect::<Vec<_>>() {
            return Err(QcdError::Subsystem(format!(
                "outputs {outputs:?} and references {references:?} must partition {} subsystems",
                dims.len()
            )));
        }
        let tr = matrix.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > tolerance::CHECK {
            return Err(QcdError::Parameter(format!("Choi trace is {tr}, expected 1")));
        }
        let eig = hermitian_eig(&matrix)?;
        if eig.values[0] < -tolerance::CHECK {
            return Err(QcdError::Parameter(format!(
                "Choi matrix has negative eigenvalue {}",
                eig.values[0]
            )));
        }
        Ok(Self {
            matrix,
            dims,
            outputs,
            references,
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Subsystems that carry the channel output.
    pub fn outputs(&self) -> &[usize] {
        &self.outputs
    }

    /// Subsystems that carry the untouched reference half of |α⟩.
    pub fn references(&self) -> &[usize] {
        &self.references
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eig(&self.matrix)
            .expect("Choi matrix was checked Hermitian")
            .values
    }

    /// Choi matrix of T∘M: the transpose applied to the channel-output subsystems.
    ///
    /// The result is Hermitian with unit trace but may have negative eigenvalues.
    pub fn compose_transpose(&self) -> ComplexMatrix {
        partial_transpose_many(&self.matrix, &self.dims, &self.outputs)
            .expect("Choi layout was validated on construction")
    }
}

/// A unitary acting on one or more qudits.
#[derive(Clone, Debug)]
pub struct GateSpec {
    unitary: ComplexMatrix,
    dims: Vec<usize>,
}

impl GateSpec {
    pub fn new(unitary: ComplexMatrix, dims: Vec<usize>) -> Result<Self> {
        let total: usize = dims.iter().product();
        if dims.is_empty() || dims.contains(&0) {
            return Err(QcdError::Dimension(format!("bad gate dims {dims:?}")));
        }
        if !unitary.is_square() || unitary.rows() != total {
            return Err(QcdError::Shape(format!(
                "{}x{} unitary does not act on dims {dims:?}",
                unitary.rows(),
                unitary.cols()
            )));
        }
        let deviation = (&unitary.adjoint() * &unitary).max_abs_diff(&ComplexMatrix::identity(total));
        if deviation > tolerance::CHECK {
            return Err(QcdError::NotUnitary { deviation });
        }
        Ok(Self { unitary, dims })
    }

    pub fn unitary(&self) -> &ComplexMatrix {
        &self.unitary
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.unitary.rows()
    }

    /// Conjugates the gate by local unitaries: (after) · U · (before).
    pub fn sandwich(&self, after: &ComplexMatrix, before: &ComplexMatrix) -> Result<Self> {
        let u = after.matmul(&self.unitary)?.matmul(before)?;
        Self::new(u, self.dims.clone())
    }
}

/// |U⟩ = (U ⊗ I)|α⟩ over outputs followed by references.
///
/// For a two-qudit gate this is the A, B, C, D state with |α⟩_AC |α⟩_BD as
/// the input, i.e. ⟨ij|⟨kl|U⟩ = U_(ij),(kl) / d.
pub fn choi_vector_of_gate(g: &GateSpec) -> Result<PureState> {
    let d = g.dim();
    let alpha = max_entangled(d)?;
    let lifted = crate::linalg::kron(g.unitary(), &ComplexMatrix::identity(d));
    let v = lifted.matvec(alpha.amplitudes())?;
    let mut dims = g.dims().to_vec();
    dims.extend_from_slice(g.dims());
    PureState::new(v, dims)
}

/// ρ → pρ + (1−p) σ_z ρ σ_z
pub fn dephasing(p: f64) -> Result<KrausChannel> {
    if !(0.0..=1.0).contains(&p) {
        return Err(QcdError::Parameter(format!(
            "dephasing probability must lie in [0, 1], got {p}"
        )));
    }
    KrausChannel::new(
        vec![
            ComplexMatrix::identity(2).scale_real(p.sqrt()),
            pauli::z().scale_real((1.0 - p).sqrt()),
        ],
        vec![2],
    )
}

pub fn unitary_channel(g: &GateSpec) -> KrausChannel {
    KrausChannel {
        ops: vec![g.unitary().clone()],
        dims: g.dims().to_vec(),
    }
}

pub fn identity_channel(d: usize) -> Result<KrausChannel> {
    if d == 0 {
        return Err(QcdError::Dimension("identity channel needs d >= 1".into()));
    }
    KrausChannel::new(vec![ComplexMatrix::identity(d)], vec![d])
}

/// Identity gate on `qudits` systems of dimension `d`.
pub fn identity_gate(d: usize, qudits: usize) -> Result<GateSpec> {
    GateSpec::new(ComplexMatrix::identity(d.pow(qudits as u32)), vec![d; qudits])
}

/// The modified swap: swap followed by a controlled-Z phase on |11⟩.
pub fn gate_v() -> GateSpec {
    let u = ComplexMatrix::from_real_rows(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 0.0, 1.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, -1.0],
    ])
    .unwrap();
    GateSpec::new(u, vec![2, 2]).unwrap()
}

/// |ij⟩ → |ji⟩ on two d-level systems.
pub fn swap_gate(d: usize) -> Result<GateSpec> {
    if d == 0 {
        return Err(QcdError::Dimension("swap needs d >= 1".into()));
    }
    let mut u = ComplexMatrix::zeros(d * d, d * d);
    for i in 0..d {
        for j in 0..d {
            u[(j * d + i, i * d + j)] = C64::new(1.0, 0.0);
        }
    }
    GateSpec::new(u, vec![d, d])
}

/// CNOT with the first qubit as control.
pub fn cnot_gate() -> GateSpec {
    let u = ComplexMatrix::from_real_rows(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
        &[0.0, 0.0, 1.0, 0.0],
    ])
    .unwrap();
    GateSpec::new(u, vec![2, 2]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{partial_transpose, PureState, ZERO};

    fn bell(sign: f64) -> PureState {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        PureState::new(
            vec![C64::new(h, 0.0), ZERO, ZERO, C64::new(sign * h, 0.0)],
            vec![2, 2],
        )
        .unwrap()
    }

    #[test]
    fn dephasing_is_valid() {
        assert!(dephasing(0.3).unwrap().validate().is_ok());
        assert!(dephasing(-0.1).is_err());
        assert!(dephasing(1.5).is_err());
    }

    #[test]
    fn scaled_identity_violation_reports_deviation() {
        let ch = KrausChannel::new(vec![ComplexMatrix::identity(2).scale_real(2.0)], vec![2]).unwrap();
        match ch.validate() {
            Err(QcdError::NotTracePreserving { deviation }) => assert!((deviation - 3.0).abs() < 1e-15),
            other => panic!("expected violation, got {other:?}"),
        }
        assert!(ch.choi().is_err());
    }

    #[test]
    fn unitary_channels_validate() {
        for g in [gate_v(), cnot_gate(), swap_gate(3).unwrap(), identity_gate(2, 2).unwrap()] {
            assert!(unitary_channel(&g).validate().is_ok());
        }
    }

    #[test]
    fn dephasing_on_plus_state() {
        let plus = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap();
        for p in [0.0, 0.2, 0.5, 0.9, 1.0] {
            let out = dephasing(p).unwrap().apply(&plus).unwrap();
            let expected = (&ComplexMatrix::identity(2) + &pauli::x().scale_real(2.0 * p - 1.0)).scale_real(0.5);
            assert!(out.max_abs_diff(&expected) < 1e-15, "p = {p}");
        }
    }

    #[test]
    fn dephasing_fixes_computational_states() {
        let zero = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, 0.0]]).unwrap();
        let rho = ComplexMatrix::from_rows(&[
            vec![C64::new(0.3, 0.0), C64::new(0.1, 0.2)],
            vec![C64::new(0.1, -0.2), C64::new(0.7, 0.0)],
        ])
        .unwrap();
        for p in [0.0, 0.37, 1.0] {
            let ch = dephasing(p).unwrap();
            assert!(ch.apply(&zero).unwrap().max_abs_diff(&zero) < 1e-15);
        }
        assert!(dephasing(1.0).unwrap().apply(&rho).unwrap().max_abs_diff(&rho) < 1e-15);
    }

    #[test]
    fn apply_rejects_wrong_dimension() {
        assert!(dephasing(0.5).unwrap().apply(&ComplexMatrix::identity(3)).is_err());
    }

    #[test]
    fn identity_channel_choi_is_bell_projector() {
        let c = identity_channel(2).unwrap().choi().unwrap();
        assert!(c.matrix().max_abs_diff(&max_entangled(2).unwrap().projector()) < 1e-15);
        assert_eq!(c.outputs(), &[0]);
        assert_eq!(c.references(), &[1]);
    }

    #[test]
    fn dephasing_choi_is_bell_mixture() {
        for p in [0.0, 0.25, 0.5, 0.8, 1.0] {
            let c = dephasing(p).unwrap().choi().unwrap();
            let expected = &bell(1.0).projector().scale_real(p) + &bell(-1.0).projector().scale_real(1.0 - p);
            assert!(c.matrix().max_abs_diff(&expected) < 1e-15);
        }
    }

    #[test]
    fn unitary_choi_is_rank_one() {
        let g = cnot_gate();
        let c = unitary_channel(&g).choi().unwrap();
        let v = choi_vector_of_gate(&g).unwrap();
        assert!(c.matrix().max_abs_diff(&v.projector()) < 1e-15);
        let eig = c.eigenvalues();
        assert!((eig[15] - 1.0).abs() < 1e-12);
        assert!(eig[..15].iter().all(|x| x.abs() < 1e-12));
    }

    #[test]
    fn compose_transpose_of_identity_is_half_swap() {
        let c = identity_channel(2).unwrap().choi().unwrap();
        let pt = c.compose_transpose();
        let half_swap = swap_gate(2).unwrap().unitary().scale_real(0.5);
        assert!(pt.max_abs_diff(&half_swap) < 1e-15);
        let eig = hermitian_eig(&pt).unwrap();
        assert!((eig.values[0] + 0.5).abs() < 1e-12);
        // involution
        let back = partial_transpose(&pt, c.dims(), 0).unwrap();
        assert!(back.max_abs_diff(c.matrix()) < 1e-15);
    }

    #[test]
    fn compose_transpose_of_balanced_dephasing_is_ppt() {
        let pt = dephasing(0.5).unwrap().choi().unwrap().compose_transpose();
        let eig = hermitian_eig(&pt).unwrap();
        assert!(eig.values[0].abs() < 1e-12);
    }

    #[test]
    fn gate_v_entries() {
        let v = gate_v();
        let expected = [
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, -1.0],
        ];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(v.unitary()[(i, j)], C64::new(expected[i][j], 0.0));
            }
        }
    }

    #[test]
    fn dephasing_zero_is_z_conjugation() {
        let ch = dephasing(0.0).unwrap();
        let rho = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap();
        let z = pauli::z();
        let expected = &(&z * &rho) * &z;
        assert!(ch.apply(&rho).unwrap().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn swap_acts_on_basis_states() {
        let s = swap_gate(2).unwrap();
        let v01 = PureState::basis(&[0, 1], &[2, 2]).unwrap();
        let out = s.unitary().matvec(v01.amplitudes()).unwrap();
        assert_eq!(out, PureState::basis(&[1, 0], &[2, 2]).unwrap().into_amplitudes());
    }

    #[test]
    fn non_unitary_gate_rejected() {
        let m = ComplexMatrix::identity(4).scale_real(0.5);
        assert!(matches!(GateSpec::new(m, vec![2, 2]), Err(QcdError::NotUnitary { .. })));
    }
}
