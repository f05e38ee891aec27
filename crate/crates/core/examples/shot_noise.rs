//! Finite-shot estimates of a witness from local Pauli measurements.
//!
//! On the pure Choi state of V every Pauli term of W_BE is a stabilizer, so
//! each shot is deterministic. Mixing in white noise shows the 1/√shots decay.
//!
//! ```text
//! cargo run --release --example shot_noise
//! ```

use qcd::be::analyze_gate;
use qcd::channels::gate_v;
use qcd::linalg::ComplexMatrix;
use qcd::measure::{detection_decision, exact_expectation, pauli_decompose, simulate_shots};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = analyze_gate(&gate_v())?;
    let decomp = pauli_decompose(&a.witness_be, 4)?;
    println!("W_BE,V has {} Pauli terms", decomp.terms.len());

    let pure = a.choi_vector.projector();
    let noisy = &pure.scale_real(0.8) + &ComplexMatrix::identity(16).scale_real(0.2 / 16.0);

    for (name, state) in [("C_V", &pure), ("0.8 C_V + 0.2 I/16", &noisy)] {
        println!("\n{name}: exact {:+.5}", exact_expectation(&a.witness_be, state)?);
        for shots in [100u64, 1_000, 4_000, 16_000] {
            let est = simulate_shots(&decomp, state, shots, 7)?;
            let v = detection_decision(&est, 3.0)?;
            println!(
                "  {shots:>6} shots/term  estimate {:+.5} ± {:.5}  detected {}",
                est.estimate,
                est.stderr,
                v.detected()
            );
        }
    }
    Ok(())
}
