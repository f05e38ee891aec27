//! α_BE and verdicts for a handful of two-qubit gates.
//!
//! ```text
//! cargo run --example known_gates
//! ```

use qcd::be::analyze_gate;
use qcd::channels::{cnot_gate, gate_v, identity_gate, swap_gate, GateSpec};
use qcd::linalg::kron;
use qcd::random::haar_unitary;
use qcd::tolerance::DETECTION;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let local = kron(&haar_unitary(2, &mut rng), &haar_unitary(2, &mut rng));
    let gates: Vec<(&str, GateSpec)> = vec![
        ("identity", identity_gate(2, 2)?),
        ("SWAP", swap_gate(2)?),
        ("CNOT", cnot_gate()),
        ("V", gate_v()),
        ("u_A (x) u_B", GateSpec::new(local, vec![2, 2])?),
        ("Haar random", GateSpec::new(haar_unitary(4, &mut rng), vec![2, 2])?),
        ("qutrit SWAP", swap_gate(3)?),
    ];
    println!("{:<12} {:>9} {:>9} {:>10} {:>9}", "gate", "alpha_be", "alpha_sep", "Tr[W C]", "detected");
    for (name, g) in gates {
        let a = analyze_gate(&g)?;
        let v = a.verdict(DETECTION)?;
        println!(
            "{name:<12} {:>9.5} {:>9.5} {:>+10.5} {:>9}",
            a.alpha_be,
            a.alpha_sep,
            v.expectation(),
            v.detected()
        );
    }
    Ok(())
}
