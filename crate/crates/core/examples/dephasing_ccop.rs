//! Co-positivity witness for the dephasing family.
//!
//! The lowest eigenvalue of the partially transposed Choi state is
//! −|2p−1|/2, so every p except 1/2 is flagged.
//!
//! ```text
//! cargo run --example dephasing_ccop
//! ```

use qcd::ccop::analyze_ccop;
use qcd::channels::dephasing;
use qcd::measure::pauli_decompose;
use qcd::tolerance::DETECTION;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>5} {:>10} {:>9}  witness", "p", "lambda_min", "detected");
    for step in 0..=10 {
        let p = step as f64 / 10.0;
        let a = analyze_ccop(&dephasing(p)?, DETECTION)?;
        let pauli = match &a.witness {
            Some(w) => pauli_decompose(&w.matrix, 2)?
                .sorted()
                .iter()
                .map(|t| format!("{:+.2} {}", t.coeff, t.string))
                .collect::<Vec<_>>()
                .join(" "),
            None => "none (PPT)".into(),
        };
        println!("{p:>5.1} {:>10.4} {:>9}  {pauli}", a.lambda_min, a.verdict.detected());
    }
    let a = analyze_ccop(&dephasing(0.0)?, DETECTION)?;
    for note in a.verdict.annotations() {
        println!("note: {note}");
    }
    Ok(())
}
