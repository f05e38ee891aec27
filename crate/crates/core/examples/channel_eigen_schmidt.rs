//! Three-cut Schmidt data for the eigenvectors of a mixed two-qubit channel.
//!
//! No verdict is attached: the bi-entangling witness needs a pure Choi state.
//!
//! ```text
//! cargo run --example channel_eigen_schmidt
//! ```

use qcd::be::analyze_channel_eigenvectors;
use qcd::channels::{gate_v, swap_gate, KrausChannel};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ch = KrausChannel::new(
        vec![
            gate_v().unitary().scale_real(0.7f64.sqrt()),
            swap_gate(2)?.unitary().scale_real(0.3f64.sqrt()),
        ],
        vec![2, 2],
    )?;
    for e in analyze_channel_eigenvectors(&ch, 1e-9)? {
        println!("eigenvalue {:.4}", e.eigenvalue);
        for (cut, coeffs) in e.schmidt.iter() {
            let c: Vec<String> = coeffs.iter().map(|x| format!("{x:.4}")).collect();
            println!("  {cut}: ({})", c.join(", "));
        }
    }
    Ok(())
}
