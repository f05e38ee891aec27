use proptest::prelude::*;
use qcd::be::be_witness;
use qcd::channels::{choi_vector_of_gate, gate_v};
use qcd::linalg::{kron, ComplexMatrix};
use qcd::measure::{
    detection_decision, exact_expectation, pauli_decompose, simulate_shots, Pauli, PauliDecomposition, PauliString,
};
use qcd::random::random_hermitian;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn v_setup() -> (PauliDecomposition, ComplexMatrix) {
    let w = be_witness(&gate_v()).unwrap();
    let state = choi_vector_of_gate(&gate_v()).unwrap().projector();
    (pauli_decompose(&w, 4).unwrap(), state)
}

/// 0.8·C_V + 0.2·I/16, where every term has nonzero shot noise.
/// Exact expectation: 0.8·(−1/2) + 0.2·7/16 = −0.3125.
fn noisy_setup() -> (PauliDecomposition, ComplexMatrix) {
    let (d, c) = v_setup();
    let state = &c.scale_real(0.8) + &ComplexMatrix::identity(16).scale_real(0.2 / 16.0);
    (d, state)
}

const NOISY_EXACT: f64 = -0.3125;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn pauli_round_trip(seed in any::<u64>(), n in 1usize..=4) {
        let m = random_hermitian(1 << n, &mut ChaCha8Rng::seed_from_u64(seed));
        let d = pauli_decompose(&m, n).unwrap();
        prop_assert!(d.reconstruct().max_abs_diff(&m) < 1e-10);
    }

    #[test]
    fn pauli_string_parse_display(letters in prop::collection::vec(0usize..4, 1..6)) {
        let s = PauliString::new(letters.iter().map(|&k| Pauli::ALL[k]).collect());
        let back: PauliString = s.to_string().parse().unwrap();
        prop_assert_eq!(back, s);
    }
}

#[test]
fn coefficients_match_dense_traces() {
    let m = random_hermitian(16, &mut ChaCha8Rng::seed_from_u64(3));
    let d = pauli_decompose(&m, 4).unwrap();
    for s in PauliString::all(4) {
        let dense = s
            .letters()
            .iter()
            .fold(ComplexMatrix::identity(1), |acc, p| kron(&acc, &p.matrix()));
        let c = m.trace_product(&dense).unwrap().re / 16.0;
        assert!((d.coeff(&s) - c).abs() < 1e-12, "{s}");
    }
}

#[test]
fn identity_only_operator_is_exact() {
    let d = pauli_decompose(&ComplexMatrix::identity(4).scale_real(0.3), 2).unwrap();
    let est = simulate_shots(&d, &ComplexMatrix::identity(4).scale_real(0.25), 10, 1).unwrap();
    assert!((est.estimate - 0.3).abs() < 1e-15);
    assert_eq!(est.stderr, 0.0);
}

#[test]
fn pure_v_terms_are_deterministic() {
    let (d, state) = v_setup();
    assert_eq!(d.terms.len(), 16);
    for seed in 0..5 {
        let est = simulate_shots(&d, &state, 200, seed).unwrap();
        assert_eq!(est.stderr, 0.0);
        assert!((est.estimate + 0.5).abs() < 1e-12);
        assert!(est.terms.iter().all(|t| t.mean.abs() == 1.0));
    }
}

#[test]
fn same_seed_same_estimate() {
    let (d, state) = noisy_setup();
    let a = simulate_shots(&d, &state, 500, 42).unwrap();
    let b = simulate_shots(&d, &state, 500, 42).unwrap();
    let c = simulate_shots(&d, &state, 500, 43).unwrap();
    assert_eq!(a, b);
    assert_ne!(a.estimate, c.estimate);
}

#[test]
fn unbiased_over_seeds() {
    let (d, state) = noisy_setup();
    let runs: Vec<_> = (0..200).map(|s| simulate_shots(&d, &state, 1000, s).unwrap()).collect();
    let mean = runs.iter().map(|r| r.estimate).sum::<f64>() / 200.0;
    let combined = (runs.iter().map(|r| r.stderr * r.stderr).sum::<f64>()).sqrt() / 200.0;
    assert!((mean - NOISY_EXACT).abs() < 3.0 * combined, "mean {mean}, combined stderr {combined}");
}

#[test]
fn stderr_scales_inverse_sqrt() {
    let (d, state) = noisy_setup();
    let avg = |shots: u64| (0..20).map(|s| simulate_shots(&d, &state, shots, s).unwrap().stderr).sum::<f64>() / 20.0;
    let ratio = avg(1000) / avg(4000);
    assert!((ratio / 2.0 - 1.0).abs() < 0.2, "ratio {ratio}");
}

#[test]
fn large_shot_count_agrees_with_exact() {
    let (d, state) = noisy_setup();
    let exact = exact_expectation(&d.reconstruct(), &state).unwrap();
    assert!((exact - NOISY_EXACT).abs() < 1e-10);
    let est = simulate_shots(&d, &state, 1_000_000, 9).unwrap();
    assert!((est.estimate - exact).abs() < 10.0 * est.stderr);
    assert!(detection_decision(&est, 3.0).unwrap().detected());
}

#[test]
fn rejects_bad_inputs() {
    let (d, state) = v_setup();
    assert!(simulate_shots(&d, &state, 0, 1).is_err());
    assert!(simulate_shots(&d, &ComplexMatrix::identity(4), 10, 1).is_err());
    let est = simulate_shots(&d, &state, 10, 1).unwrap();
    assert!(detection_decision(&est, 0.0).is_err());
    assert!(pauli_decompose(&ComplexMatrix::identity(3), 1).is_err());
}
