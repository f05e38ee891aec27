mod common;

use common::{oracle_choi_reshape, oracle_singular_values};
use proptest::prelude::*;
use qcd::be::{
    alpha_be, analyze_channel_eigenvectors, analyze_gate, be_witness, detect_non_be, min_expectation_on_biseparable,
    sample_biseparable, ThreeCutSchmidt,
};
use qcd::channels::{choi_vector_of_gate, cnot_gate, gate_v, identity_gate, swap_gate, unitary_channel, GateSpec, KrausChannel};
use qcd::linalg::{kron, schmidt_coefficients, ComplexMatrix};
use qcd::measure::exact_expectation;
use qcd::random::haar_unitary;
use qcd::tolerance::DETECTION;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn assert_spectrum(got: &[f64], want: &[f64], tol: f64) {
    assert_eq!(got.len(), want.len());
    for (a, b) in got.iter().zip(want) {
        assert!((a - b).abs() < tol, "{got:?} vs {want:?}");
    }
}

/// Top Schmidt coefficient of each cut via nalgebra on the index-built reshape.
fn oracle_cut_tops(u: &ComplexMatrix, d: usize) -> [f64; 3] {
    [[0, 2], [0, 3], [0, 1]].map(|left| oracle_singular_values(&oracle_choi_reshape(u, d, left))[0])
}

#[test]
fn gate_v_three_cut_spectra() {
    let a = analyze_gate(&gate_v()).unwrap();
    assert_spectrum(&a.schmidt.ac_bd, &[0.5; 4], 1e-10);
    assert_spectrum(&a.schmidt.ad_bc, &[H, H, 0.0, 0.0], 1e-10);
    assert_spectrum(&a.schmidt.ab_cd, &[0.5; 4], 1e-10);
    assert!((a.alpha_be - H).abs() < 1e-10);
    assert!((a.alpha_sep - 0.5).abs() < 1e-10);
}

#[test]
fn known_gates_against_svd_oracle() {
    for (name, g, top) in [
        ("V", gate_v(), H),
        ("CNOT", cnot_gate(), H),
        ("SWAP", swap_gate(2).unwrap(), 1.0),
        ("identity", identity_gate(2, 2).unwrap(), 1.0),
        ("qutrit SWAP", swap_gate(3).unwrap(), 1.0),
    ] {
        let d = g.dims()[0];
        let oracle = oracle_cut_tops(g.unitary(), d);
        let ours = analyze_gate(&g).unwrap();
        for ((label, s), o) in ours.schmidt.iter().zip(oracle) {
            assert!((s[0] - o).abs() < 1e-10, "{name} {label}");
        }
        assert!((ours.alpha_be - top).abs() < 1e-10, "{name}");
        let v = detect_non_be(&g, DETECTION).unwrap();
        assert_eq!(v.detected(), top < 1.0, "{name}");
    }
    let cnot = analyze_gate(&cnot_gate()).unwrap();
    assert_spectrum(&cnot.schmidt.ac_bd, &[H, H, 0.0, 0.0], 1e-10);
}

#[test]
fn gate_v_witnesses_are_shifted_projectors() {
    let g = gate_v();
    let c = choi_vector_of_gate(&g).unwrap().projector();
    let a = analyze_gate(&g).unwrap();
    let expected_be = &ComplexMatrix::identity(16).scale_real(0.5) - &c;
    let expected_sep = &ComplexMatrix::identity(16).scale_real(0.25) - &c;
    assert!(a.witness_be.max_abs_diff(&expected_be) < 1e-10);
    assert!(a.witness_sep.max_abs_diff(&expected_sep) < 1e-10);
    assert!((exact_expectation(&a.witness_be, &c).unwrap() + 0.5).abs() < 1e-10);
    assert!((exact_expectation(&a.witness_sep, &c).unwrap() + 0.75).abs() < 1e-10);
}

#[test]
fn witness_positive_on_biseparable_samples() {
    let w = be_witness(&gate_v()).unwrap();
    for (i, cut) in ThreeCutSchmidt::cuts().iter().enumerate() {
        let worst = min_expectation_on_biseparable(&w, cut, 2, 200, 17 + i as u64).unwrap();
        assert!(worst >= -1e-9, "{cut}: {worst}");
    }
}

#[test]
fn biseparable_samples_are_products_across_their_cut() {
    for cut in ThreeCutSchmidt::cuts() {
        let s = sample_biseparable(&cut, 2, 5).unwrap();
        let top = schmidt_coefficients(&s.vector, &cut).unwrap()[0];
        assert!((top - 1.0).abs() < 1e-10, "{cut}");
    }
}

#[test]
fn mixed_channel_reports_eigenvector_data() {
    let v = gate_v().unitary().scale_real(0.6f64.sqrt());
    let s = swap_gate(2).unwrap().unitary().scale_real(0.4f64.sqrt());
    let ch = KrausChannel::new(vec![v, s], vec![2, 2]).unwrap();
    let data = analyze_channel_eigenvectors(&ch, 1e-9).unwrap();
    assert!(!data.is_empty() && data.len() <= 2);
    let total: f64 = data.iter().map(|e| e.eigenvalue).sum();
    assert!((total - 1.0).abs() < 1e-10);
    assert!(analyze_channel_eigenvectors(&unitary_channel(&gate_v()), 1e-9).unwrap().len() == 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_unitary_structure(seed in any::<u64>(), d in 2usize..=3) {
        let u = haar_unitary(d * d, &mut ChaCha8Rng::seed_from_u64(seed));
        let g = GateSpec::new(u, vec![d, d]).unwrap();
        let a = analyze_gate(&g).unwrap();
        for x in &a.schmidt.ab_cd {
            prop_assert!((x - 1.0 / d as f64).abs() < 1e-9);
        }
        prop_assert!(a.alpha_sep > 0.0 && a.alpha_sep <= a.alpha_be + 1e-15 && a.alpha_be <= 1.0 + 1e-12);
        let c = a.choi_vector.projector();
        let e_be = exact_expectation(&a.witness_be, &c).unwrap();
        let e_sep = exact_expectation(&a.witness_sep, &c).unwrap();
        prop_assert!((e_be - (a.alpha_be * a.alpha_be - 1.0)).abs() < 1e-10);
        prop_assert!(e_sep <= e_be + 1e-12);
    }

    #[test]
    fn local_unitaries_preserve_spectra(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = haar_unitary(4, &mut rng);
        let after = kron(&haar_unitary(2, &mut rng), &haar_unitary(2, &mut rng));
        let before = kron(&haar_unitary(2, &mut rng), &haar_unitary(2, &mut rng));
        let g = GateSpec::new(u, vec![2, 2]).unwrap();
        let h = g.sandwich(&after, &before).unwrap();
        let a = analyze_gate(&g).unwrap();
        let b = analyze_gate(&h).unwrap();
        for ((_, x), (_, y)) in a.schmidt.iter().zip(b.schmidt.iter()) {
            for (p, q) in x.iter().zip(y) {
                prop_assert!((p - q).abs() < 1e-9);
            }
        }
        prop_assert!((alpha_be(&a.choi_vector).unwrap() - alpha_be(&b.choi_vector).unwrap()).abs() < 1e-9);
    }
}

#[test]
fn rejects_unequal_qudits() {
    let g = GateSpec::new(ComplexMatrix::identity(6), vec![2, 3]).unwrap();
    assert!(analyze_gate(&g).is_err());
}
