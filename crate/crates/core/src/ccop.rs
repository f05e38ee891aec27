//! Detection of channels that are not completely co-positive.
//!
//! A channel M is completely co-positive when T∘M is completely positive,
//! i.e. when its Choi matrix stays positive after transposing the output
//! subsystem. If that partial transpose has a negative eigenvalue λ₋ with
//! eigenvector |λ₋⟩, the operator W = (|λ₋⟩⟨λ₋|)^{T_out} is nonnegative on every
//! PPT state and Tr[W C_M] = λ₋ < 0.

use crate::channels::{ChoiState, KrausChannel};
use crate::error::{QcdError, Result};
use crate::linalg::{hermitian_eig, partial_transpose_many, ComplexMatrix, PureState};
use crate::measure::exact_expectation;
use crate::tolerance;
use crate::verdict::Verdict;

/// Lowest eigenpair of the partially transposed Choi matrix.
#[derive(Clone, Debug)]
pub struct MinEigenpair {
    pub lambda_min: f64,
    pub eigvec: PureState,
    /// How many eigenvalues lie within the degeneracy threshold of `lambda_min`.
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct CcopWitness {
    /// The raw transposed projector; not renormalized.
    pub matrix: ComplexMatrix,
    pub lambda_min: f64,
    pub eigvec: PureState,
    pub multiplicity: usize,
}

/// Everything the exact CCOP check produces.
#[derive(Clone, Debug)]
pub struct CcopAnalysis {
    pub verdict: Verdict,
    pub lambda_min: f64,
    /// `None` when the transposed Choi matrix is positive within tolerance.
    pub witness: Option<CcopWitness>,
}

pub fn min_pt_eigenpair(c: &ChoiState) -> Result<MinEigenpair> {
    let pt = c.compose_transpose();
    let eig = hermitian_eig(&pt)?;
    let lambda_min = eig.values[0];
    let multiplicity = eig
        .values
        .iter()
        .take_while(|&&x| x - lambda_min <= tolerance::DEGENERACY)
        .count();
    let eigvec = PureState::normalized(eig.vector(0), c.dims().to_vec())?;
    Ok(MinEigenpair {
        lambda_min,
        eigvec,
        multiplicity,
    })
}

/// W = (|λ₋⟩⟨λ₋|)^{T_out}, or [`QcdError::NoWitness`] when λ₋ ≥ −tol.
pub fn ccop_witness(c: &ChoiState, tol: f64) -> Result<CcopWitness> {
    let pair = min_pt_eigenpair(c)?;
    if pair.lambda_min >= -tol {
        return Err(QcdError::NoWitness {
            lambda_min: pair.lambda_min,
        });
    }
    let matrix = partial_transpose_many(&pair.eigvec.projector(), c.dims(), c.outputs())?;
    Ok(CcopWitness {
        matrix,
        lambda_min: pair.lambda_min,
        eigvec: pair.eigvec,
        multiplicity: pair.multiplicity,
    })
}

pub fn analyze_ccop(ch: &KrausChannel, tol: f64) -> Result<CcopAnalysis> {
    let choi = ch.choi()?;
    match ccop_witness(&choi, tol) {
        Ok(w) => {
            let expectation = exact_expectation(&w.matrix, choi.matrix())?;
            let mut notes = Vec::new();
            let mut verdict = Verdict::new(expectation, tol, Vec::new());
            if verdict.detected() {
                notes.push("not completely co-positive: transpose∘channel is not completely positive".to_string());
                notes.push(
                    "not entanglement breaking: the Choi state is NPT, hence entangled".to_string(),
                );
            }
            if w.multiplicity > 1 {
                notes.push(format!(
                    "lambda_min has multiplicity {}; the witness uses the first eigenvector returned, other choices in the eigenspace are equally valid",
                    w.multiplicity
                ));
            }
            for n in notes {
                verdict.annotate(n);
            }
            Ok(CcopAnalysis {
                verdict,
                lambda_min: w.lambda_min,
                witness: Some(w),
            })
        }
        Err(QcdError::NoWitness { lambda_min }) => Ok(CcopAnalysis {
            verdict: Verdict::new(
                lambda_min,
                tol,
                vec!["Choi is PPT: no co-positivity witness from the lowest eigenvector".to_string()],
            ),
            lambda_min,
            witness: None,
        }),
        Err(e) => Err(e),
    }
}

/// Exact verdict: expectation Tr[W C], detected iff it falls below −tol.
pub fn detect_non_ccop(ch: &KrausChannel, tol: f64) -> Result<Verdict> {
    analyze_ccop(ch, tol).map(|a| a.verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{dephasing, identity_channel};
    use crate::linalg::{inner, C64, ZERO};

    const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn dephasing_quarter_eigenpair() {
        let c = dephasing(0.25).unwrap().choi().unwrap();
        let pair = min_pt_eigenpair(&c).unwrap();
        assert!((pair.lambda_min + 0.25).abs() < 1e-12);
        let triplet = [ZERO, C64::new(H, 0.0), C64::new(H, 0.0), ZERO];
        assert!((inner(&triplet, pair.eigvec.amplitudes()).norm() - 1.0).abs() < 1e-12);
        assert_eq!(pair.multiplicity, 1);
    }

    #[test]
    fn identity_channel_eigenpair_is_singlet() {
        let c = dephasing(1.0).unwrap().choi().unwrap();
        let pair = min_pt_eigenpair(&c).unwrap();
        assert!((pair.lambda_min + 0.5).abs() < 1e-12);
        let singlet = [ZERO, C64::new(H, 0.0), C64::new(-H, 0.0), ZERO];
        assert!((inner(&singlet, pair.eigvec.amplitudes()).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn balanced_dephasing_has_zero_lambda_and_no_witness() {
        let c = dephasing(0.5).unwrap().choi().unwrap();
        assert!(min_pt_eigenpair(&c).unwrap().lambda_min.abs() < 1e-12);
        assert!(matches!(
            ccop_witness(&c, tolerance::DETECTION),
            Err(QcdError::NoWitness { .. })
        ));
    }

    #[test]
    fn witness_has_unit_trace_and_is_hermitian() {
        let c = dephasing(0.1).unwrap().choi().unwrap();
        let w = ccop_witness(&c, tolerance::DETECTION).unwrap();
        assert!((w.matrix.trace().re - 1.0).abs() < 1e-12);
        assert!(w.matrix.is_hermitian(1e-12));
    }

    #[test]
    fn detection_examples() {
        let v = detect_non_ccop(&dephasing(0.25).unwrap(), tolerance::DETECTION).unwrap();
        assert!(v.detected());
        assert!((v.expectation() + 0.25).abs() < 1e-9);

        let v = detect_non_ccop(&dephasing(0.5).unwrap(), tolerance::DETECTION).unwrap();
        assert!(!v.detected());
        assert!(v.annotations().iter().any(|a| a.contains("Choi is PPT")));

        let v = detect_non_ccop(&identity_channel(2).unwrap(), tolerance::DETECTION).unwrap();
        assert!(v.detected());
        assert!((v.expectation() + 0.5).abs() < 1e-9);
        assert!(v.annotations().iter().any(|a| a.contains("not entanglement breaking")));
    }

    #[test]
    fn qutrit_identity_has_degenerate_lambda() {
        // (1/3)·SWAP on two qutrits: eigenvalue −1/3 with multiplicity 3
        let a = analyze_ccop(&identity_channel(3).unwrap(), tolerance::DETECTION).unwrap();
        assert!((a.lambda_min + 1.0 / 3.0).abs() < 1e-12);
        assert_eq!(a.witness.as_ref().unwrap().multiplicity, 3);
        assert!((a.verdict.expectation() - a.lambda_min).abs() < 1e-9);
        assert!(a.verdict.annotations().iter().any(|n| n.contains("multiplicity 3")));
    }
}
