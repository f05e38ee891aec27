//! Build channels from Kraus operators and inspect their Choi states.
//!
//! ```text
//! cargo run --example choi_states
//! ```

use qcd::channels::{dephasing, gate_v, unitary_channel, KrausChannel};
use qcd::linalg::ComplexMatrix;

fn amplitude_damping(gamma: f64) -> qcd::Result<KrausChannel> {
    let k0 = ComplexMatrix::from_real_rows(&[&[1.0, 0.0], &[0.0, (1.0 - gamma).sqrt()]])?;
    let k1 = ComplexMatrix::from_real_rows(&[&[0.0, gamma.sqrt()], &[0.0, 0.0]])?;
    KrausChannel::new(vec![k0, k1], vec![2])
}

fn show(name: &str, ch: &KrausChannel) -> qcd::Result<()> {
    let choi = ch.choi()?;
    let ev: Vec<String> = choi.eigenvalues().iter().map(|x| format!("{x:+.4}")).collect();
    println!(
        "{name:<22} dims {:?}  outputs {:?}  eigenvalues [{}]",
        choi.dims(),
        choi.outputs(),
        ev.join(", ")
    );
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    show("dephasing p=0.3", &dephasing(0.3)?)?;
    show("amplitude damping 0.25", &amplitude_damping(0.25)?)?;
    show("gate V", &unitary_channel(&gate_v()))?;

    let rho = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]])?;
    let out = dephasing(0.3)?.apply(&rho)?;
    println!("|+><+| after dephasing: off-diagonal {:.3}", out[(0, 1)].re);

    let broken = KrausChannel::new(vec![ComplexMatrix::identity(2).scale_real(2.0)], vec![2])?;
    if let Err(e) = broken.choi() {
        println!("rejected: {e}");
    }
    Ok(())
}
