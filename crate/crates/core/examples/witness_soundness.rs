//! Monte Carlo check that W_BE,V stays nonnegative on biseparable states,
//! and that a co-positivity witness stays nonnegative on PPT states.
//!
//! ```text
//! cargo run --release --example witness_soundness
//! ```

use qcd::be::{analyze_gate, min_expectation_on_biseparable, ThreeCutSchmidt};
use qcd::ccop::ccop_witness;
use qcd::channels::{dephasing, gate_v};
use qcd::linalg::{hermitian_eig, partial_transpose};
use qcd::measure::exact_expectation;
use qcd::random::random_density_matrix;
use qcd::tolerance::DETECTION;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let w = analyze_gate(&gate_v())?.witness_be;
    for (i, cut) in ThreeCutSchmidt::cuts().iter().enumerate() {
        let worst = min_expectation_on_biseparable(&w, cut, 2, 1000, i as u64)?;
        println!("{cut}: min Tr[W_BE Xi] over 1000 samples = {worst:+.4}");
    }

    let wc = ccop_witness(&dephasing(0.1)?.choi()?, DETECTION)?.matrix;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut ppt, mut worst) = (0, f64::INFINITY);
    while ppt < 500 {
        let rho = random_density_matrix(4, 4, &mut rng);
        if hermitian_eig(&partial_transpose(&rho, &[2, 2], 0)?)?.values[0] < 0.0 {
            continue;
        }
        worst = worst.min(exact_expectation(&wc, &rho)?);
        ppt += 1;
    }
    println!("PPT states: min Tr[W_CCOP rho] over {ppt} samples = {worst:+.4}");
    Ok(())
}
