//! Bi-entangling witness for the modified swap V.
//!
//! ```text
//! cargo run --example gate_v_be
//! ```

use qcd::be::analyze_gate;
use qcd::channels::gate_v;
use qcd::measure::exact_expectation;
use qcd::tolerance::DETECTION;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = analyze_gate(&gate_v())?;
    for (cut, coeffs) in a.schmidt.iter() {
        let c: Vec<String> = coeffs.iter().map(|x| format!("{x:.4}")).collect();
        println!("{cut}: ({})", c.join(", "));
    }
    println!("alpha_be  = {:.6}", a.alpha_be);
    println!("alpha_sep = {:.6}", a.alpha_sep);

    let c = a.choi_vector.projector();
    println!("Tr[W_BE C_V]  = {:+.6}", exact_expectation(&a.witness_be, &c)?);
    println!("Tr[W_Sep C_V] = {:+.6}", exact_expectation(&a.witness_sep, &c)?);

    let v = a.verdict(DETECTION)?;
    println!("detected: {}", v.detected());
    for note in v.annotations() {
        println!("  {note}");
    }
    Ok(())
}
