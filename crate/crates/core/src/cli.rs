//! `qcd choi | detect | decompose`
//!
//! Exit codes: 0 analysis completed (the verdict lives in the report),
//! 1 internal failure or failed `--verify`, 2 invalid spec or usage,
//! 3 I/O failure, 4 spec incompatible with the requested class,
//! 5 operator is not on qubits.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::be::analyze_gate;
use crate::ccop::analyze_ccop;
use crate::channels::spec::{matrix_from_json, JsonMatrix};
use crate::channels::{ChannelInput, ChannelSpec};
use crate::error::QcdError;
use crate::linalg::ComplexMatrix;
use crate::measure::{detection_decision, pauli_decompose, qubit_count, simulate_shots, PauliDecomposition};
use crate::report::{self, ccop_fragment, be_fragment, sampling_fragment, DetectionReport};
use crate::tolerance;

pub const SEED_ENV: &str = "QCD_SEED";

#[derive(Debug, Parser)]
#[command(name = "qcd", version, about = "Witness-based quantum channel detection")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write the Choi matrix of a channel and its eigenvalues.
    Choi {
        spec: PathBuf,
        /// Output file (defaults to stdout).
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
    /// Evaluate the CCOP or BE witness on a channel's Choi state.
    Detect {
        class: Class,
        spec: PathBuf,
        #[command(flatten)]
        opts: DetectOpts,
    },
    /// Expand a witness in local Pauli strings.
    Decompose {
        /// JSON witness matrix (rows of [re, im]) or {"matrix": ...}.
        #[arg(long, conflicts_with_all = ["spec", "class"], required_unless_present = "spec")]
        witness: Option<PathBuf>,
        /// Channel spec whose witness should be decomposed.
        #[arg(long, requires = "class")]
        spec: Option<PathBuf>,
        #[arg(long)]
        class: Option<Class>,
        #[arg(long, default_value_t = tolerance::DETECTION)]
        tol: f64,
        /// Check that the terms reconstruct the witness within 1e-10.
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Debug, Args)]
struct DetectOpts {
    #[arg(long, default_value_t = tolerance::DETECTION)]
    tol: f64,
    /// Also simulate finite-shot local measurements with this many shots per Pauli term.
    #[arg(long)]
    shots: Option<u64>,
    /// Seed for the shot simulation (falls back to $QCD_SEED, then 0).
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = tolerance::DEFAULT_K_SIGMA)]
    k_sigma: f64,
    /// Report file (defaults to stdout).
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Class {
    Ccop,
    Be,
}

#[derive(Debug)]
enum Failure {
    Internal(String),
    Spec(String),
    Io(String),
    Mismatch(String),
    NotQubit(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Internal(_) => 1,
            Failure::Spec(_) => 2,
            Failure::Io(_) => 3,
            Failure::Mismatch(_) => 4,
            Failure::NotQubit(_) => 5,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Internal(m)
            | Failure::Spec(m)
            | Failure::Io(m)
            | Failure::Mismatch(m)
            | Failure::NotQubit(m) => m,
        }
    }
}

impl From<QcdError> for Failure {
    fn from(e: QcdError) -> Self {
        match e {
            QcdError::Spec(_) => Failure::Spec(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

fn read_file(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn write_output(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", p.display()))),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Io(format!("cannot write to stdout: {e}"))),
    }
}

fn load_spec(path: &Path) -> Result<(Vec<u8>, ChannelInput), Failure> {
    let bytes = read_file(path)?;
    let text = std::str::from_utf8(&bytes).map_err(|e| Failure::Spec(format!("spec is not UTF-8: {e}")))?;
    let input = ChannelSpec::from_json(text)?.build()?;
    Ok((bytes, input))
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Spec(format!("{SEED_ENV}={v:?} is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

fn qubit_decomposition(w: &ComplexMatrix) -> Result<PauliDecomposition, Failure> {
    let n = qubit_count(w.rows()).ok_or_else(|| {
        Failure::NotQubit(format!(
            "{}-dimensional operator is not on qubits; only exact evaluation is available",
            w.rows()
        ))
    })?;
    Ok(pauli_decompose(w, n)?)
}

fn cmd_choi(spec: &Path, out: Option<&Path>, stdout: &mut dyn Write) -> Result<(), Failure> {
    let (_, input) = load_spec(spec)?;
    let choi = input.channel.choi()?;
    write_output(out, &report::choi_document(&choi)?, stdout)
}

fn cmd_detect(class: Class, spec: &Path, opts: &DetectOpts, stdout: &mut dyn Write) -> Result<(), Failure> {
    if !(opts.tol >= 0.0) || !(opts.k_sigma > 0.0) {
        return Err(Failure::Spec("--tol must be >= 0 and --k-sigma > 0".into()));
    }
    let (bytes, input) = load_spec(spec)?;
    let seed = resolve_seed(opts.seed)?;

    // (fragment, witness, state) for the sampled path
    let (fragment, witness, state) = match class {
        Class::Ccop => {
            let analysis = analyze_ccop(&input.channel, opts.tol)?;
            let choi = input.channel.choi()?;
            let decomp = match &analysis.witness {
                Some(w) => qubit_count(w.matrix.rows())
                    .map(|n| pauli_decompose(&w.matrix, n))
                    .transpose()?,
                None => None,
            };
            let fragment = ccop_fragment(&analysis, decomp.as_ref())?;
            (fragment, analysis.witness.map(|w| w.matrix), choi.matrix().clone())
        }
        Class::Be => {
            let gate = input.gate.as_ref().ok_or_else(|| {
                Failure::Mismatch(format!(
                    "bi-entangling detection needs a unitary two-qudit gate, got {}",
                    input.label
                ))
            })?;
            let analysis = analyze_gate(gate).map_err(|e| match e {
                QcdError::Subsystem(m) => Failure::Mismatch(m),
                other => other.into(),
            })?;
            let verdict = analysis.verdict(opts.tol)?;
            let fragment = be_fragment(&analysis, &verdict)?;
            let state = analysis.choi_vector.projector();
            (fragment, Some(analysis.witness_be), state)
        }
    };

    let sampling = match (opts.shots, witness) {
        (Some(shots), Some(w)) => match qubit_count(w.rows()) {
            Some(_) => {
                let decomp = qubit_decomposition(&w)?;
                let est = simulate_shots(&decomp, &state, shots, seed)?;
                let verdict = detection_decision(&est, opts.k_sigma)?;
                Some(sampling_fragment(&decomp, &est, &verdict, opts.k_sigma)?)
            }
            None => {
                let mut m = serde_json::Map::new();
                m.insert("skipped".into(), json!("qudit witness: exact evaluation only"));
                Some(m)
            }
        },
        (Some(_), None) => {
            let mut m = serde_json::Map::new();
            m.insert("skipped".into(), json!("no witness to measure"));
            Some(m)
        }
        (None, _) => None,
    };

    let report = DetectionReport::new(&bytes, &input.label, seed, opts.tol, opts.k_sigma, fragment, sampling);
    write_output(opts.report.as_deref(), &report.to_json()?, stdout)
}

fn load_witness(path: &Path) -> Result<ComplexMatrix, Failure> {
    let bytes = read_file(path)?;
    let value: Value =
        serde_json::from_slice(&bytes).map_err(|e| Failure::Spec(format!("invalid witness JSON: {e}")))?;
    let rows = match value {
        Value::Object(mut m) => m
            .remove("matrix")
            .ok_or_else(|| Failure::Spec("witness object needs a \"matrix\" field".into()))?,
        other => other,
    };
    let rows: JsonMatrix =
        serde_json::from_value(rows).map_err(|e| Failure::Spec(format!("invalid witness matrix: {e}")))?;
    let m = matrix_from_json(&rows)?;
    if !m.is_hermitian(tolerance::CHECK) {
        return Err(Failure::Spec("witness matrix is not Hermitian".into()));
    }
    Ok(m)
}

fn cmd_decompose(
    witness: Option<&Path>,
    spec: Option<&Path>,
    class: Option<Class>,
    tol: f64,
    verify: bool,
    stdout: &mut dyn Write,
) -> Result<(), Failure> {
    let w = match (witness, spec, class) {
        (Some(path), _, _) => load_witness(path)?,
        (None, Some(path), Some(Class::Ccop)) => {
            let (_, input) = load_spec(path)?;
            let analysis = analyze_ccop(&input.channel, tol)?;
            analysis
                .witness
                .ok_or_else(|| Failure::Mismatch("no CCOP witness: Choi is PPT".into()))?
                .matrix
        }
        (None, Some(path), Some(Class::Be)) => {
            let (_, input) = load_spec(path)?;
            let gate = input
                .gate
                .ok_or_else(|| Failure::Mismatch("BE witness needs a unitary two-qudit gate".into()))?;
            analyze_gate(&gate)
                .map_err(|e| Failure::Mismatch(e.to_string()))?
                .witness_be
        }
        _ => return Err(Failure::Spec("give --witness, or --spec with --class".into())),
    };
    let decomp = qubit_decomposition(&w)?;
    let mut doc = serde_json::Map::new();
    doc.insert("n_qubits".into(), json!(decomp.n_qubits));
    doc.insert("pauli_terms".into(), report::pauli_terms(&decomp)?);
    let mut verified = true;
    if verify {
        let error = decomp.reconstruct().max_abs_diff(&w);
        verified = error <= tolerance::CHECK;
        doc.insert("reconstruction_error".into(), json!(error));
        doc.insert("verified".into(), json!(verified));
    }
    write_output(None, &report::to_json_string(&doc)?, stdout)?;
    if !verified {
        return Err(Failure::Internal("Pauli reconstruction exceeds 1e-10".into()));
    }
    Ok(())
}

/// Parses `args` (including the program name) and runs one command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Choi { spec, out } => cmd_choi(spec, out.as_deref(), stdout),
        Command::Detect { class, spec, opts } => cmd_detect(*class, spec, opts, stdout),
        Command::Decompose {
            witness,
            spec,
            class,
            tol,
            verify,
        } => cmd_decompose(witness.as_deref(), spec.as_deref(), *class, *tol, *verify, stdout),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            let _ = writeln!(stderr, "qcd: {}", f.message());
            f.code()
        }
    }
}
