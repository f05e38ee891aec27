//! Detection of two-qudit gates that are not bi-entangling.
//!
//! The Choi vector |U⟩ lives on A, B (outputs) and C, D (references). Bi-entangling
//! operations have Choi states in the convex hull of states biseparable across
//! AC|BD, AD|BC or AB|CD. The best overlap of |U⟩ with a pure biseparable state
//! is the largest Schmidt coefficient over those three cuts, α_BE, so
//! W = α_BE²·I − |U⟩⟨U| is nonnegative on the hull and has expectation
//! α_BE² − 1 on |U⟩. Restricting to AC|BD alone gives the separable-map
//! witness with α_sep ≤ α_BE.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::channels::{choi_vector_of_gate, GateSpec, KrausChannel};
use crate::error::{QcdError, Result};
use crate::linalg::{
    hermitian_eig, permute_subsystems, schmidt_coefficients, Bipartition, ComplexMatrix,
    PureState,
};
use crate::measure::exact_expectation;
use crate::random::random_pure_state;
use crate::verdict::Verdict;

/// Schmidt spectra of a four-partite vector across the three 2|2 cuts.
#[derive(Clone, Debug, PartialEq)]
pub struct ThreeCutSchmidt {
    pub ac_bd: Vec<f64>,
    pub ad_bc: Vec<f64>,
    pub ab_cd: Vec<f64>,
}

impl ThreeCutSchmidt {
    pub const LABELS: [&'static str; 3] = ["AC|BD", "AD|BC", "AB|CD"];

    pub fn cuts() -> [Bipartition; 3] {
        [Bipartition::ac_bd(), Bipartition::ad_bc(), Bipartition::ab_cd()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&'static str, &[f64])> {
        Self::LABELS
            .into_iter()
            .zip([self.ac_bd.as_slice(), self.ad_bc.as_slice(), self.ab_cd.as_slice()])
    }

    /// Largest coefficient over all three cuts.
    pub fn top(&self) -> f64 {
        self.iter().map(|(_, s)| s[0]).fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug)]
pub struct BeAnalysis {
    pub choi_vector: PureState,
    pub schmidt: ThreeCutSchmidt,
    pub alpha_be: f64,
    pub alpha_sep: f64,
    pub witness_be: ComplexMatrix,
    pub witness_sep: ComplexMatrix,
}

#[derive(Clone, Debug)]
pub struct BiseparableSample {
    pub vector: PureState,
    pub cut: Bipartition,
}

fn check_four_qudits(v: &PureState) -> Result<usize> {
    let dims = v.dims();
    if dims.len() != 4 {
        return Err(QcdError::Subsystem(format!(
            "expected a vector over A,B,C,D, got {} subsystems",
            dims.len()
        )));
    }
    if dims.iter().any(|&d| d != dims[0]) {
        return Err(QcdError::Subsystem(format!(
            "all four subsystems must share one dimension, got {dims:?}"
        )));
    }
    Ok(dims[0])
}

fn check_two_qudit_gate(g: &GateSpec) -> Result<()> {
    match g.dims() {
        [a, b] if a == b => Ok(()),
        dims => Err(QcdError::Subsystem(format!(
            "bi-entangling analysis needs a gate on two equal qudits, got dims {dims:?}"
        ))),
    }
}

pub fn bipartition_schmidt(u_vec: &PureState) -> Result<ThreeCutSchmidt> {
    check_four_qudits(u_vec)?;
    Ok(ThreeCutSchmidt {
        ac_bd: schmidt_coefficients(u_vec, &Bipartition::ac_bd())?,
        ad_bc: schmidt_coefficients(u_vec, &Bipartition::ad_bc())?,
        ab_cd: schmidt_coefficients(u_vec, &Bipartition::ab_cd())?,
    })
}

pub fn alpha_be(u_vec: &PureState) -> Result<f64> {
    Ok(bipartition_schmidt(u_vec)?.top())
}

/// Top Schmidt coefficient across AC|BD only.
pub fn alpha_sep(u_vec: &PureState) -> Result<f64> {
    check_four_qudits(u_vec)?;
    Ok(schmidt_coefficients(u_vec, &Bipartition::ac_bd())?[0])
}

fn shifted_projector_witness(alpha: f64, v: &PureState) -> ComplexMatrix {
    let n = v.dim();
    &ComplexMatrix::identity(n).scale_real(alpha * alpha) - &v.projector()
}

pub fn analyze_gate(g: &GateSpec) -> Result<BeAnalysis> {
    check_two_qudit_gate(g)?;
    let choi_vector = choi_vector_of_gate(g)?;
    let schmidt = bipartition_schmidt(&choi_vector)?;
    let alpha_be = schmidt.top();
    let alpha_sep = schmidt.ac_bd[0];
    Ok(BeAnalysis {
        witness_be: shifted_projector_witness(alpha_be, &choi_vector),
        witness_sep: shifted_projector_witness(alpha_sep, &choi_vector),
        choi_vector,
        schmidt,
        alpha_be,
        alpha_sep,
    })
}

/// α_BE²·I − |U⟩⟨U| on the d⁴-dimensional space.
pub fn be_witness(g: &GateSpec) -> Result<ComplexMatrix> {
    Ok(analyze_gate(g)?.witness_be)
}

/// α_sep²·I − |U⟩⟨U|, the separable-map comparator.
pub fn sep_witness(g: &GateSpec) -> Result<ComplexMatrix> {
    Ok(analyze_gate(g)?.witness_sep)
}

impl BeAnalysis {
    pub fn verdict(&self, tol: f64) -> Result<Verdict> {
        let expectation = exact_expectation(&self.witness_be, &self.choi_vector.projector())?;
        let mut v = Verdict::new(expectation, tol, Vec::new());
        if v.detected() {
            v.annotate("not bi-entangling: Choi vector overlaps every biseparable state across AC|BD, AD|BC, AB|CD by less than 1");
        }
        if self.alpha_sep < 1.0 - tol {
            v.annotate("not separable: AC|BD Schmidt rank exceeds 1");
        }
        Ok(v)
    }
}

/// Exact verdict with expectation Tr[W_BE C_U] = α_BE² − 1.
pub fn detect_non_be(g: &GateSpec, tol: f64) -> Result<Verdict> {
    analyze_gate(g)?.verdict(tol)
}

/// Haar-random product of a left-block state and a right-block state,
/// expressed in A, B, C, D order.
pub fn sample_biseparable(cut: &Bipartition, d: usize, seed: u64) -> Result<BiseparableSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let left = random_pure_state(&vec![d; cut.left().len()], &mut rng);
    let right = random_pure_state(&vec![d; cut.right().len()], &mut rng);
    let ordered = left.tensor(&right);
    // new subsystem k sits at position order⁻¹[k] of the left++right layout
    let order = cut.ordering();
    let mut inverse = vec![0; order.len()];
    for (pos, &k) in order.iter().enumerate() {
        inverse[k] = pos;
    }
    Ok(BiseparableSample {
        vector: permute_subsystems(&ordered, &inverse)?,
        cut: cut.clone(),
    })
}

/// Deterministic per-sample seed from a base seed and a sample index.
pub fn sample_seed(base_seed: u64, index: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = base_seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Smallest Tr[W |Ξ⟩⟨Ξ|] over `n_samples` random biseparable states across `cut`.
pub fn min_expectation_on_biseparable(
    witness: &ComplexMatrix,
    cut: &Bipartition,
    d: usize,
    n_samples: usize,
    base_seed: u64,
) -> Result<f64> {
    let mut worst = f64::INFINITY;
    for i in 0..n_samples {
        let s = sample_biseparable(cut, d, sample_seed(base_seed, i as u64))?;
        let psi = s.vector.amplitudes();
        let w_psi = witness.matvec(psi)?;
        let value = crate::linalg::inner(psi, &w_psi).re;
        worst = worst.min(value);
    }
    Ok(worst)
}

/// Three-cut Schmidt data of one eigenvector of a (possibly mixed) Choi state.
#[derive(Clone, Debug)]
pub struct EigenvectorSchmidt {
    pub eigenvalue: f64,
    pub schmidt: ThreeCutSchmidt,
}

/// For general two-qudit channels: Schmidt data of every Choi eigenvector with
/// weight above `tol`, heaviest first. No verdict is attached.
pub fn analyze_channel_eigenvectors(ch: &KrausChannel, tol: f64) -> Result<Vec<EigenvectorSchmidt>> {
    match ch.dims() {
        [a, b] if a == b => {}
        dims => {
            return Err(QcdError::Subsystem(format!(
                "expected a channel on two equal qudits, got dims {dims:?}"
            )))
        }
    }
    let choi = ch.choi()?;
    let eig = hermitian_eig(choi.matrix())?;
    let mut out = Vec::new();
    for k in (0..eig.values.len()).rev() {
        if eig.values[k] <= tol {
            break;
        }
        let v = PureState::normalized(eig.vector(k), choi.dims().to_vec())?;
        out.push(EigenvectorSchmidt {
            eigenvalue: eig.values[k],
            schmidt: bipartition_schmidt(&v)?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{cnot_gate, gate_v, identity_gate, swap_gate};
    use crate::tolerance;

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    fn assert_spectrum(got: &[f64], want: &[f64]) {
        assert_eq!(got.len(), want.len());
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-10, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn gate_v_spectra() {
        let s = bipartition_schmidt(&choi_vector_of_gate(&gate_v()).unwrap()).unwrap();
        assert_spectrum(&s.ac_bd, &[0.5; 4]);
        assert_spectrum(&s.ad_bc, &[H, H, 0.0, 0.0]);
        assert_spectrum(&s.ab_cd, &[0.5; 4]);
    }

    #[test]
    fn identity_is_product_across_ac_bd() {
        let s = bipartition_schmidt(&choi_vector_of_gate(&identity_gate(2, 2).unwrap()).unwrap()).unwrap();
        assert_spectrum(&s.ac_bd, &[1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn cnot_spectra() {
        let s = bipartition_schmidt(&choi_vector_of_gate(&cnot_gate()).unwrap()).unwrap();
        assert_spectrum(&s.ac_bd, &[H, H, 0.0, 0.0]);
        assert_spectrum(&s.ad_bc, &[0.5; 4]);
    }

    #[test]
    fn alphas() {
        let v = choi_vector_of_gate(&gate_v()).unwrap();
        assert!((alpha_be(&v).unwrap() - H).abs() < 1e-10);
        assert!((alpha_sep(&v).unwrap() - 0.5).abs() < 1e-10);
        let s = choi_vector_of_gate(&swap_gate(2).unwrap()).unwrap();
        assert!((alpha_be(&s).unwrap() - 1.0).abs() < 1e-10);
        let c = choi_vector_of_gate(&cnot_gate()).unwrap();
        assert!((alpha_be(&c).unwrap() - H).abs() < 1e-10);
    }

    #[test]
    fn witnesses_for_v() {
        let g = gate_v();
        let cv = choi_vector_of_gate(&g).unwrap().projector();
        let id = ComplexMatrix::identity(16);
        let expected_be = &id.scale_real(0.5) - &cv;
        let expected_sep = &id.scale_real(0.25) - &cv;
        assert!(be_witness(&g).unwrap().max_abs_diff(&expected_be) < 1e-10);
        assert!(sep_witness(&g).unwrap().max_abs_diff(&expected_sep) < 1e-10);
    }

    #[test]
    fn verdicts() {
        let tol = tolerance::DETECTION;
        let v = detect_non_be(&gate_v(), tol).unwrap();
        assert!(v.detected() && (v.expectation() + 0.5).abs() < 1e-10);
        let s = detect_non_be(&swap_gate(2).unwrap(), tol).unwrap();
        assert!(!s.detected() && s.expectation().abs() < 1e-10);
        let c = detect_non_be(&cnot_gate(), tol).unwrap();
        assert!(c.detected() && (c.expectation() + 0.5).abs() < 1e-10);
        let i = detect_non_be(&identity_gate(2, 2).unwrap(), tol).unwrap();
        assert!(!i.detected() && i.expectation().abs() < 1e-10);
    }

    #[test]
    fn qutrit_swap_is_not_detected() {
        let a = analyze_gate(&swap_gate(3).unwrap()).unwrap();
        assert!((a.alpha_be - 1.0).abs() < 1e-10);
        assert!((a.alpha_sep - 1.0 / 3.0).abs() < 1e-10);
        assert_spectrum(&a.schmidt.ab_cd, &[1.0 / 3.0; 9]);
    }

    #[test]
    fn samples_are_product_across_their_cut() {
        for (i, cut) in ThreeCutSchmidt::cuts().iter().enumerate() {
            let s = sample_biseparable(cut, 2, 11 + i as u64).unwrap();
            let coeffs = schmidt_coefficients(&s.vector, cut).unwrap();
            assert!((coeffs[0] - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn single_qudit_gate_rejected() {
        let g = GateSpec::new(ComplexMatrix::identity(4), vec![4]).unwrap();
        assert!(analyze_gate(&g).is_err());
        let bad = PureState::basis(&[0, 0], &[2, 2]).unwrap();
        assert!(bipartition_schmidt(&bad).is_err());
    }

    #[test]
    fn mixed_channel_eigenvectors() {
        // half V, half SWAP: two Choi eigenvectors of weight 1/2 each
        let ops = vec![
            gate_v().unitary().scale_real(H),
            swap_gate(2).unwrap().unitary().scale_real(H),
        ];
        let ch = KrausChannel::new(ops, vec![2, 2]).unwrap();
        let data = analyze_channel_eigenvectors(&ch, 1e-9).unwrap();
        assert!(!data.is_empty());
        let total: f64 = data.iter().map(|e| e.eigenvalue).sum();
        assert!((total - 1.0).abs() < 1e-10);
        for e in &data {
            for (_, coeffs) in e.schmidt.iter() {
                let norm: f64 = coeffs.iter().map(|x| x * x).sum();
                assert!((norm - 1.0).abs() < 1e-10);
            }
        }
    }
}
