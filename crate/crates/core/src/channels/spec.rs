//! JSON channel specifications.
//!
//! ```json
//! {"kind": "dephasing", "p": 0.25}
//! {"kind": "unitary", "matrix": [[[1,0],[0,0]], [[0,0],[1,0]]]}
//! {"kind": "kraus", "kraus": [ <matrix>, <matrix>, ... ], "dims": [2]}
//! {"kind": "builtin", "name": "V" | "swap" | "identity" | "cnot", "dim": 2}
//! ```
//!
//! Matrices are arrays of rows, each entry a `[re, im]` pair.

use serde::{Deserialize, Serialize};

use super::{
    cnot_gate, dephasing, gate_v, identity_channel, identity_gate, swap_gate, unitary_channel,
    GateSpec, KrausChannel,
};
use crate::error::{QcdError, Result};
use crate::linalg::{ComplexMatrix, C64};

/// Rows of `[re, im]` pairs.
pub type JsonMatrix = Vec<Vec<[f64; 2]>>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ChannelSpec {
    Dephasing {
        p: f64,
    },
    Unitary {
        #[serde(alias = "unitary")]
        matrix: JsonMatrix,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dims: Option<Vec<usize>>,
    },
    Kraus {
        #[serde(alias = "ops", alias = "operators")]
        kraus: Vec<JsonMatrix>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dims: Option<Vec<usize>>,
    },
    Builtin {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        dim: Option<usize>,
        /// Only meaningful for `identity`: number of qudits (default 1).
        #[serde(default, skip_serializing_if = "Option::is_none")]
        qudits: Option<usize>,
    },
}

/// A parsed channel plus its gate form when it is a single unitary.
#[derive(Clone, Debug)]
pub struct ChannelInput {
    pub channel: KrausChannel,
    pub gate: Option<GateSpec>,
    pub label: String,
}

pub fn matrix_from_json(m: &JsonMatrix) -> Result<ComplexMatrix> {
    let rows: Vec<Vec<C64>> = m
        .iter()
        .map(|r| r.iter().map(|&[re, im]| C64::new(re, im)).collect())
        .collect();
    let out = ComplexMatrix::from_rows(&rows).map_err(|e| QcdError::Spec(e.to_string()))?;
    if !out.is_square() {
        return Err(QcdError::Spec(format!(
            "matrix must be square, got {}x{}",
            out.rows(),
            out.cols()
        )));
    }
    Ok(out)
}

pub fn matrix_to_json(m: &ComplexMatrix) -> JsonMatrix {
    m.to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(|z| [z.re, z.im]).collect())
        .collect()
}

/// Two equal qudits when n is a perfect square k² (k ≥ 2), else one system.
fn default_dims(n: usize) -> Vec<usize> {
    let k = (n as f64).sqrt().round() as usize;
    if k >= 2 && k * k == n {
        vec![k, k]
    } else {
        vec![n]
    }
}

fn check_dims(dims: &[usize], n: usize) -> Result<()> {
    if dims.iter().product::<usize>() != n || dims.contains(&0) {
        return Err(QcdError::Spec(format!(
            "dims {dims:?} do not multiply to matrix size {n}"
        )));
    }
    Ok(())
}

fn spec_err(e: QcdError) -> QcdError {
    match e {
        QcdError::Spec(_) => e,
        other => QcdError::Spec(other.to_string()),
    }
}

impl ChannelSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| QcdError::Spec(e.to_string()))
    }

    pub fn build(&self) -> Result<ChannelInput> {
        self.build_inner().map_err(spec_err)
    }

    fn build_inner(&self) -> Result<ChannelInput> {
        match self {
            ChannelSpec::Dephasing { p } => Ok(ChannelInput {
                channel: dephasing(*p)?,
                gate: None,
                label: format!("dephasing(p={p})"),
            }),
            ChannelSpec::Unitary { matrix, dims } => {
                let u = matrix_from_json(matrix)?;
                let dims = dims.clone().unwrap_or_else(|| default_dims(u.rows()));
                check_dims(&dims, u.rows())?;
                let gate = GateSpec::new(u, dims)?;
                Ok(ChannelInput {
                    channel: unitary_channel(&gate),
                    gate: Some(gate),
                    label: "unitary".into(),
                })
            }
            ChannelSpec::Kraus { kraus, dims } => {
                let ops = kraus.iter().map(matrix_from_json).collect::<Result<Vec<_>>>()?;
                let n = ops.first().map(|m| m.rows()).unwrap_or(0);
                let dims = dims.clone().unwrap_or_else(|| default_dims(n));
                check_dims(&dims, n)?;
                let channel = KrausChannel::new(ops, dims)?;
                channel.validate()?;
                Ok(ChannelInput {
                    gate: channel.as_gate(),
                    channel,
                    label: format!("kraus({} ops)", kraus.len()),
                })
            }
            ChannelSpec::Builtin { name, dim, qudits } => {
                let gate = match name.to_ascii_lowercase().as_str() {
                    "v" => {
                        if dim.is_some_and(|d| d != 2) {
                            return Err(QcdError::Spec("builtin V acts on qubits only (dim 2)".into()));
                        }
                        gate_v()
                    }
                    "cnot" => {
                        if dim.is_some_and(|d| d != 2) {
                            return Err(QcdError::Spec("builtin cnot acts on qubits only (dim 2)".into()));
                        }
                        cnot_gate()
                    }
                    "swap" => swap_gate(dim.unwrap_or(2))?,
                    "identity" => {
                        let d = dim.unwrap_or(2);
                        match qudits.unwrap_or(1) {
                            0 => return Err(QcdError::Spec("identity needs at least one qudit".into())),
                            1 => {
                                let channel = identity_channel(d)?;
                                return Ok(ChannelInput {
                                    gate: channel.as_gate(),
                                    channel,
                                    label: format!("identity(d={d})"),
                                });
                            }
                            q => identity_gate(d, q)?,
                        }
                    }
                    other => {
                        return Err(QcdError::Spec(format!(
                            "unknown builtin {other:?} (expected V, swap, identity or cnot)"
                        )))
                    }
                };
                Ok(ChannelInput {
                    channel: unitary_channel(&gate),
                    gate: Some(gate),
                    label: format!("builtin {name}"),
                })
            }
        }
    }
}
