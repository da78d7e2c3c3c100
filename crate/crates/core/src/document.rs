//! The JSON exchange format for two-qubit Hamiltonians.
//!
//! ```json
//! {"n": 2, "format": "pauli", "name": "zz", "pauli": {"II": 1.0, "ZZ": 1.0}}
//! {"n": 2, "format": "matrix", "matrix": [[[1.0, 0.0], ...], ...]}
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, Hermitian, LinalgError, C64};
use crate::pauli::{from_pauli_coefficients, pauli_coefficients, PauliPair};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Matrix,
    Pauli,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HamiltonianDocument {
    pub n: u32,
    pub format: Format,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<[f64; 2]>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pauli: Option<BTreeMap<String, f64>>,
}

fn doc_err(msg: impl Into<String>) -> Error {
    Error::Document(msg.into())
}

impl HamiltonianDocument {
    /// Parses and validates; errors carry the line/column or the offending field.
    pub fn parse(text: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(text).map_err(|e| doc_err(format!("invalid document: {e}")))?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn validate(&self) -> Result<()> {
        self.to_hamiltonian().map(|_| ())
    }

    pub fn to_hamiltonian(&self) -> Result<Hermitian> {
        if self.n != 2 {
            return Err(doc_err(format!("n: only two-qubit Hamiltonians are supported, got {}", self.n)));
        }
        match self.format {
            Format::Matrix => {
                if self.pauli.is_some() {
                    return Err(doc_err("pauli: not allowed with format \"matrix\""));
                }
                let rows = self.matrix.as_ref().ok_or_else(|| doc_err("matrix: missing"))?;
                if rows.len() != 4 {
                    return Err(doc_err(format!("matrix: expected 4 rows, got {}", rows.len())));
                }
                let mut out = Vec::with_capacity(4);
                for (i, row) in rows.iter().enumerate() {
                    if row.len() != 4 {
                        return Err(doc_err(format!("matrix[{i}]: expected 4 entries, got {}", row.len())));
                    }
                    if let Some(j) = row.iter().position(|z| !z[0].is_finite() || !z[1].is_finite()) {
                        return Err(doc_err(format!("matrix[{i}][{j}]: entry is not finite")));
                    }
                    out.push(row.iter().map(|z| C64::new(z[0], z[1])).collect());
                }
                let m = CMatrix::from_rows(&out)?;
                Hermitian::new(m).map_err(|e| match e {
                    LinalgError::NotHermitian { deviation } => {
                        doc_err(format!("matrix: not Hermitian (max |M − M†| = {deviation:e})"))
                    }
                    other => Error::Linalg(other),
                })
            }
            Format::Pauli => {
                if self.matrix.is_some() {
                    return Err(doc_err("matrix: not allowed with format \"pauli\""));
                }
                let map = self.pauli.as_ref().ok_or_else(|| doc_err("pauli: missing"))?;
                let mut coeffs = [0.0; 16];
                for (key, &value) in map {
                    let p: PauliPair = key.parse().map_err(|_| doc_err(format!("pauli.{key}: not a two-letter Pauli string")))?;
                    if !value.is_finite() {
                        return Err(doc_err(format!("pauli.{key}: coefficient is not finite")));
                    }
                    coeffs[p.index()] = value;
                }
                Ok(from_pauli_coefficients(&coeffs))
            }
        }
    }

    pub fn from_matrix(h: &Hermitian) -> Self {
        let rows = (0..4).map(|i| (0..4).map(|j| [h[(i, j)].re, h[(i, j)].im]).collect()).collect();
        Self { n: 2, format: Format::Matrix, name: None, seed: None, matrix: Some(rows), pauli: None }
    }

    /// Pauli form keeping only nonzero coefficients.
    pub fn from_pauli(h: &Hermitian) -> Self {
        let c = pauli_coefficients(h);
        let map = PauliPair::all()
            .filter(|p| c[p.index()] != 0.0)
            .map(|p| (p.to_string(), c[p.index()]))
            .collect();
        Self { n: 2, format: Format::Pauli, name: None, seed: None, matrix: None, pauli: Some(map) }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("document serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}
