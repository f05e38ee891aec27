//! Parse a JSON channel spec and produce the same report the CLI writes.
//!
//! ```text
//! cargo run --example json_report
//! ```

use qcd::ccop::analyze_ccop;
use qcd::channels::ChannelSpec;
use qcd::measure::pauli_decompose;
use qcd::report::{ccop_fragment, DetectionReport};
use qcd::tolerance::{DEFAULT_K_SIGMA, DETECTION};

const SPEC: &str = r#"{"kind": "dephasing", "p": 0.2}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let input = ChannelSpec::from_json(SPEC)?.build()?;
    let a = analyze_ccop(&input.channel, DETECTION)?;
    let decomp = a.witness.as_ref().map(|w| pauli_decompose(&w.matrix, 2)).transpose()?;
    let fragment = ccop_fragment(&a, decomp.as_ref())?;
    let report = DetectionReport::new(SPEC.as_bytes(), &input.label, 0, DETECTION, DEFAULT_K_SIGMA, fragment, None);
    print!("{}", report.to_json()?);
    Ok(())
}
