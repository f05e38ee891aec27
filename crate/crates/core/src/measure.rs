//! Local Pauli measurements of qubit witnesses.
//!
//! A Hermitian operator on n qubits expands as W = Σ_P c_P P with
//! c_P = Tr[W P] / 2ⁿ. Each non-identity string is estimated from its own
//! batch of shots: the qubits in its support are measured in the local
//! eigenbasis of their letter and the ±1 outcomes are multiplied. Every term
//! gets the same number of shots and an RNG stream keyed by (seed, term index),
//! so the result does not depend on evaluation order.

use std::fmt;
use std::str::FromStr;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{QcdError, Result};
use crate::linalg::{kron, partial_trace, pauli, ComplexMatrix, C64, ONE, ZERO};
use crate::tolerance;
use crate::verdict::Verdict;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    pub fn matrix(self) -> ComplexMatrix {
        match self {
            Pauli::I => ComplexMatrix::identity(2),
            Pauli::X => pauli::x(),
            Pauli::Y => pauli::y(),
            Pauli::Z => pauli::z(),
        }
    }

    /// Rows are ⟨e₊|, ⟨e₋| for the +1 and −1 eigenvectors.
    fn measurement_basis(self) -> ComplexMatrix {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        let hh = C64::new(h, 0.0);
        let rows = match self {
            Pauli::I | Pauli::Z => return ComplexMatrix::identity(2),
            Pauli::X => vec![vec![hh, hh], vec![hh, -hh]],
            Pauli::Y => vec![vec![hh, C64::new(0.0, -h)], vec![hh, C64::new(0.0, h)]],
        };
        ComplexMatrix::from_rows(&rows).unwrap()
    }

    fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// Tensor product of single-qubit Paulis, qubit 0 first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn new(letters: Vec<Pauli>) -> Self {
        Self(letters)
    }

    pub fn identity(n: usize) -> Self {
        Self(vec![Pauli::I; n])
    }

    pub fn letters(&self) -> &[Pauli] {
        &self.0
    }

    pub fn n_qubits(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&p| p == Pauli::I)
    }

    /// Qubits with a non-identity letter.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&q| self.0[q] != Pauli::I).collect()
    }

    pub fn matrix(&self) -> ComplexMatrix {
        self.0
            .iter()
            .fold(ComplexMatrix::identity(1), |acc, p| kron(&acc, &p.matrix()))
    }

    /// All 4ⁿ strings in lexicographic I < X < Y < Z order.
    pub fn all(n: usize) -> impl Iterator<Item = PauliString> {
        (0..4usize.pow(n as u32)).map(move |mut k| {
            let mut letters = vec![Pauli::I; n];
            for q in (0..n).rev() {
                letters[q] = Pauli::ALL[k % 4];
                k /= 4;
            }
            PauliString(letters)
        })
    }

    /// Tr[m · P] using the one-nonzero-per-column structure of P.
    fn trace_against(&self, m: &ComplexMatrix) -> C64 {
        let n = self.0.len();
        let dim = 1usize << n;
        let flip: usize = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, p)| matches!(p, Pauli::X | Pauli::Y))
            .map(|(q, _)| 1 << (n - 1 - q))
            .sum();
        let mut acc = ZERO;
        for col in 0..dim {
            let row = col ^ flip;
            // P[row, col] as a product of single-qubit entries
            let mut entry = ONE;
            for (q, p) in self.0.iter().enumerate() {
                let bit = (col >> (n - 1 - q)) & 1;
                entry *= match (p, bit) {
                    (Pauli::I | Pauli::X, _) => ONE,
                    (Pauli::Y, 0) => C64::new(0.0, 1.0),
                    (Pauli::Y, _) => C64::new(0.0, -1.0),
                    (Pauli::Z, 0) => ONE,
                    (Pauli::Z, _) => -ONE,
                };
            }
            acc += m[(col, row)] * entry;
        }
        acc
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = QcdError;

    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .map(|c| match c.to_ascii_uppercase() {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                other => Err(QcdError::Parameter(format!("not a Pauli letter: {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(PauliString)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PauliTerm {
    pub coeff: f64,
    pub string: PauliString,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PauliDecomposition {
    pub terms: Vec<PauliTerm>,
    pub n_qubits: usize,
}

impl PauliDecomposition {
    /// Σ c_P · P
    pub fn reconstruct(&self) -> ComplexMatrix {
        let dim = 1usize << self.n_qubits;
        self.terms.iter().fold(ComplexMatrix::zeros(dim, dim), |acc, t| {
            &acc + &t.string.matrix().scale_real(t.coeff)
        })
    }

    /// Terms by descending |coeff|, ties broken by the string in I < X < Y < Z order.
    pub fn sorted(&self) -> Vec<PauliTerm> {
        let mut terms = self.terms.clone();
        terms.sort_by(|a, b| {
            b.coeff
                .abs()
                .total_cmp(&a.coeff.abs())
                .then_with(|| a.string.cmp(&b.string))
        });
        terms
    }

    pub fn coeff(&self, s: &PauliString) -> f64 {
        self.terms
            .iter()
            .find(|t| &t.string == s)
            .map_or(0.0, |t| t.coeff)
    }
}

pub fn qubit_count(dim: usize) -> Option<usize> {
    (dim.is_power_of_two() && dim >= 2).then(|| dim.trailing_zeros() as usize)
}

/// Expands a Hermitian operator on `n_qubits` qubits in the Pauli basis.
pub fn pauli_decompose(w: &ComplexMatrix, n_qubits: usize) -> Result<PauliDecomposition> {
    let dim = 1usize << n_qubits;
    if !w.is_square() || w.rows() != dim || n_qubits == 0 {
        return Err(QcdError::Dimension(format!(
            "{}x{} operator is not a {n_qubits}-qubit operator",
            w.rows(),
            w.cols()
        )));
    }
    let defect = w.hermiticity_defect();
    if defect > tolerance::CHECK {
        return Err(QcdError::NotHermitian {
            defect,
            tol: tolerance::CHECK,
        });
    }
    let terms = PauliString::all(n_qubits)
        .filter_map(|string| {
            let coeff = string.trace_against(w).re / dim as f64;
            (coeff.abs() >= tolerance::PAULI_DROP).then_some(PauliTerm { coeff, string })
        })
        .collect();
    Ok(PauliDecomposition { terms, n_qubits })
}

/// Re Tr[w · state]; errors if the imaginary part exceeds the check tolerance.
pub fn exact_expectation(w: &ComplexMatrix, state: &ComplexMatrix) -> Result<f64> {
    let t = w.trace_product(state)?;
    if t.im.abs() > tolerance::CHECK {
        return Err(QcdError::Parameter(format!(
            "expectation has imaginary part {:.3e}; operator or state is not Hermitian",
            t.im
        )));
    }
    Ok(t.re)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TermEstimate {
    pub string: String,
    pub coeff: f64,
    pub mean: f64,
    pub stderr: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShotEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub shots_per_term: u64,
    pub seed: u64,
    pub terms: Vec<TermEstimate>,
}

/// RNG stream for one Pauli term.
pub fn term_rng(seed: u64, term_index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(term_index as u64);
    rng
}

/// Outcome probabilities of measuring `string` on `state`, indexed by the
/// support qubits' bits, paired with the product eigen-sign of each outcome.
fn outcome_distribution(string: &PauliString, state: &ComplexMatrix) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = string.n_qubits();
    let support = string.support();
    let marginal = partial_trace(state, &vec![2; n], &support)?;
    let basis = support
        .iter()
        .fold(ComplexMatrix::identity(1), |acc, &q| {
            kron(&acc, &string.letters()[q].measurement_basis())
        });
    let rotated = &(&basis * &marginal) * &basis.adjoint();
    let probs: Vec<f64> = (0..rotated.rows()).map(|k| rotated[(k, k)].re.max(0.0)).collect();
    let signs = (0..probs.len())
        .map(|k: usize| if k.count_ones().is_multiple_of(2) { 1.0 } else { -1.0 })
        .collect();
    Ok((probs, signs))
}

/// Finite-shot estimate of the decomposed operator on `state`.
pub fn simulate_shots(
    decomp: &PauliDecomposition,
    state: &ComplexMatrix,
    shots_per_term: u64,
    seed: u64,
) -> Result<ShotEstimate> {
    let dim = state.rows();
    if qubit_count(dim) != Some(decomp.n_qubits) || !state.is_square() {
        return Err(QcdError::Dimension(format!(
            "{}x{} state does not match a {}-qubit decomposition",
            state.rows(),
            state.cols(),
            decomp.n_qubits
        )));
    }
    if shots_per_term == 0 {
        return Err(QcdError::Parameter("shots_per_term must be at least 1".into()));
    }

    let mut estimate = 0.0;
    let mut variance = 0.0;
    let mut terms = Vec::with_capacity(decomp.terms.len());
    for (index, term) in decomp.terms.iter().enumerate() {
        if term.string.is_identity() {
            estimate += term.coeff;
            terms.push(TermEstimate {
                string: term.string.to_string(),
                coeff: term.coeff,
                mean: 1.0,
                stderr: 0.0,
            });
            continue;
        }
        let (probs, signs) = outcome_distribution(&term.string, state)?;
        let sampler = WeightedIndex::new(&probs)
            .map_err(|e| QcdError::Parameter(format!("bad outcome distribution: {e}")))?;
        let mut rng = term_rng(seed, index);
        let mut plus = 0u64;
        for _ in 0..shots_per_term {
            if signs[sampler.sample(&mut rng)] > 0.0 {
                plus += 1;
            }
        }
        let n = shots_per_term as f64;
        let mean = (2.0 * plus as f64 - n) / n;
        // sample variance of ±1 outcomes
        let sample_var = if shots_per_term > 1 {
            ((1.0 - mean * mean) * n / (n - 1.0)).max(0.0)
        } else {
            0.0
        };
        let stderr = (sample_var / n).sqrt();
        estimate += term.coeff * mean;
        variance += term.coeff * term.coeff * stderr * stderr;
        terms.push(TermEstimate {
            string: term.string.to_string(),
            coeff: term.coeff,
            mean,
            stderr,
        });
    }
    Ok(ShotEstimate {
        estimate,
        stderr: variance.sqrt(),
        shots_per_term,
        seed,
        terms,
    })
}

/// Detected iff estimate + k·stderr < 0. The verdict's tolerance is k·stderr.
pub fn detection_decision(est: &ShotEstimate, k_sigma: f64) -> Result<Verdict> {
    if !(k_sigma > 0.0) {
        return Err(QcdError::Parameter(format!("k_sigma must be positive, got {k_sigma}")));
    }
    let mut v = Verdict::new(est.estimate, k_sigma * est.stderr, Vec::new());
    v.annotate(format!(
        "sampled: {} shots per Pauli term, {k_sigma}σ threshold",
        est.shots_per_term
    ));
    Ok(v)
}
