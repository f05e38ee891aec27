//! Machine-readable JSON reports.
//!
//! Floats are written with 17 significant digits in scientific notation so
//! every value round-trips exactly; object keys are sorted, which together
//! make reports byte-stable for identical inputs.

use std::io;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::be::BeAnalysis;
use crate::ccop::CcopAnalysis;
use crate::channels::spec::matrix_to_json;
use crate::channels::ChoiState;
use crate::error::{QcdError, Result};
use crate::measure::{PauliDecomposition, ShotEstimate};
use crate::verdict::Verdict;

pub const TOOL: &str = "qcd";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Pretty printer that writes every f64 as `{:.16e}`.
struct FixedDigits<'a> {
    inner: PrettyFormatter<'a>,
}

impl Formatter for FixedDigits<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        write!(w, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn begin_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_array(w)
    }

    fn end_array<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array(w)
    }

    fn begin_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_array_value(w)
    }

    fn begin_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object(w)
    }

    fn end_object<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object(w)
    }

    fn begin_object_key<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.inner.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.inner.end_object_value(w)
    }
}

fn check_finite(v: &Value, path: &str) -> Result<()> {
    match v {
        Value::Number(n) if n.as_f64().is_some_and(|x| !x.is_finite()) => {
            Err(QcdError::NonFinite(path.to_string()))
        }
        // serde_json maps NaN/inf to null on conversion, so a null where a
        // float was expected is caught by the caller's own checks
        Value::Array(items) => items
            .iter()
            .enumerate()
            .try_for_each(|(i, x)| check_finite(x, &format!("{path}[{i}]"))),
        Value::Object(map) => map
            .iter()
            .try_for_each(|(k, x)| check_finite(x, &format!("{path}.{k}"))),
        _ => Ok(()),
    }
}

fn finite(x: f64, what: &str) -> Result<Value> {
    if !x.is_finite() {
        return Err(QcdError::NonFinite(what.to_string()));
    }
    Ok(json!(x))
}

/// Serializes with the fixed float format and a trailing newline.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| QcdError::Parameter(e.to_string()))?;
    check_finite(&v, "$")?;
    let mut buf = Vec::new();
    let fmt = FixedDigits {
        inner: PrettyFormatter::with_indent(b"  "),
    };
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
    v.serialize(&mut ser).map_err(|e| QcdError::Parameter(e.to_string()))?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json writes UTF-8"))
}

pub fn digest(bytes: &[u8]) -> String {
    let hash = Sha256::digest(bytes);
    let hex: String = hash.iter().map(|b| format!("{b:02x}")).collect();
    format!("sha256:{hex}")
}

pub fn pauli_terms(decomp: &PauliDecomposition) -> Result<Value> {
    decomp
        .sorted()
        .iter()
        .map(|t| Ok(json!({"string": t.string.to_string(), "coeff": finite(t.coeff, "coeff")?})))
        .collect::<Result<Vec<_>>>()
        .map(Value::Array)
}

/// `{"class": "ccop", "detected", "expectation", "lambda_min", "witness_pauli", "annotations"}`
pub fn ccop_fragment(a: &CcopAnalysis, witness_pauli: Option<&PauliDecomposition>) -> Result<Map<String, Value>> {
    let mut m = Map::new();
    m.insert("class".into(), json!("ccop"));
    m.insert("detected".into(), json!(a.verdict.detected()));
    m.insert("expectation".into(), finite(a.verdict.expectation(), "expectation")?);
    m.insert("lambda_min".into(), finite(a.lambda_min, "lambda_min")?);
    m.insert(
        "witness_pauli".into(),
        match witness_pauli {
            Some(d) => pauli_terms(d)?,
            None => Value::Null,
        },
    );
    m.insert("annotations".into(), json!(a.verdict.annotations()));
    Ok(m)
}

/// `{"class": "be", "alpha_be", "alpha_sep", "schmidt": {...}, "detected", "expectation"}`
pub fn be_fragment(a: &BeAnalysis, verdict: &Verdict) -> Result<Map<String, Value>> {
    let mut schmidt = Map::new();
    for (label, coeffs) in a.schmidt.iter() {
        let values = coeffs
            .iter()
            .map(|&x| finite(x, label))
            .collect::<Result<Vec<_>>>()?;
        schmidt.insert(label.to_string(), Value::Array(values));
    }
    let mut m = Map::new();
    m.insert("class".into(), json!("be"));
    m.insert("alpha_be".into(), finite(a.alpha_be, "alpha_be")?);
    m.insert("alpha_sep".into(), finite(a.alpha_sep, "alpha_sep")?);
    m.insert("schmidt".into(), Value::Object(schmidt));
    m.insert("detected".into(), json!(verdict.detected()));
    m.insert("expectation".into(), finite(verdict.expectation(), "expectation")?);
    m.insert("annotations".into(), json!(verdict.annotations()));
    m.insert(
        "subsystems".into(),
        json!("A=0, B=1 (gate outputs), C=2, D=3 (references); pairs A-C and B-D"),
    );
    Ok(m)
}

/// `{"pauli_terms", "shots_per_term", "seed", "estimate", "stderr", "detected"}`
pub fn sampling_fragment(
    decomp: &PauliDecomposition,
    est: &ShotEstimate,
    verdict: &Verdict,
    k_sigma: f64,
) -> Result<Map<String, Value>> {
    let mut m = Map::new();
    m.insert("pauli_terms".into(), pauli_terms(decomp)?);
    m.insert("shots_per_term".into(), json!(est.shots_per_term));
    m.insert("seed".into(), json!(est.seed));
    m.insert("estimate".into(), finite(est.estimate, "estimate")?);
    m.insert("stderr".into(), finite(est.stderr, "stderr")?);
    m.insert("k_sigma".into(), finite(k_sigma, "k_sigma")?);
    m.insert("detected".into(), json!(verdict.detected()));
    Ok(m)
}

/// Full report: provenance fields plus one class fragment and optional sampling.
#[derive(Clone, Debug, Serialize)]
pub struct DetectionReport {
    pub tool: &'static str,
    pub version: &'static str,
    pub input: Value,
    pub seed: u64,
    pub tolerances: Value,
    #[serde(flatten)]
    pub fragment: Map<String, Value>,
    pub sampling: Value,
}

impl DetectionReport {
    pub fn new(
        spec_bytes: &[u8],
        label: &str,
        seed: u64,
        tol: f64,
        k_sigma: f64,
        fragment: Map<String, Value>,
        sampling: Option<Map<String, Value>>,
    ) -> Self {
        Self {
            tool: TOOL,
            version: VERSION,
            input: json!({"digest": digest(spec_bytes), "label": label}),
            seed,
            tolerances: json!({"tol": tol, "k_sigma": k_sigma}),
            fragment,
            sampling: sampling.map_or(Value::Null, Value::Object),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        to_json_string(self)
    }
}

pub fn choi_document(c: &ChoiState) -> Result<String> {
    let matrix = matrix_to_json(c.matrix());
    let eigenvalues = c.eigenvalues();
    to_json_string(&json!({
        "dims": c.dims(),
        "outputs": c.outputs(),
        "references": c.references(),
        "matrix": matrix,
        "eigenvalues": eigenvalues,
    }))
}
