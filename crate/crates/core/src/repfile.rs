//! JSON rep files (`"format": "dmsa-rep/1"`): matrices as row-major arrays
//! of `[re, im]` pairs.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::catalog::NamedRep;
use crate::dmsa::{DmsaError, Rep};
use crate::matkernel::{CMatrix, C64};

pub const FORMAT_TAG: &str = "dmsa-rep/1";

#[derive(Debug, thiserror::Error)]
pub enum RepFileError {
    #[error("io error on {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed rep file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format tag {0:?}, expected {FORMAT_TAG:?}")]
    Format(String),
    #[error("inconsistent shape: {0}")]
    Shape(String),
    #[error(transparent)]
    Rep(#[from] DmsaError),
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RepFile {
    pub format: String,
    pub d: usize,
    /// `false` marks generators that need not be Hermitian.
    #[serde(default = "default_true")]
    pub hermitian: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_mu: Option<Vec<f64>>,
    pub matrices: Vec<Vec<Vec<[f64; 2]>>>,
    #[serde(default)]
    pub metadata: Metadata,
}

fn default_true() -> bool {
    true
}

fn encode(m: &CMatrix) -> Vec<Vec<[f64; 2]>> {
    (0..m.nrows()).map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect()).collect()
}

impl RepFile {
    pub fn from_named(nr: &NamedRep) -> RepFile {
        RepFile {
            format: FORMAT_TAG.to_string(),
            d: nr.d(),
            hermitian: nr.rep.is_hermitian(),
            expected_mu: nr.expected_spectrum.clone(),
            matrices: nr.rep.matrices().iter().map(encode).collect(),
            metadata: Metadata { name: Some(nr.name.clone()), seed: None, notes: nr.notes.clone() },
        }
    }

    /// Rebuilds the representation; Hermitian files are checked against
    /// `hermitian_tol`.
    pub fn to_named(&self, hermitian_tol: f64) -> Result<NamedRep, RepFileError> {
        if self.format != FORMAT_TAG {
            return Err(RepFileError::Format(self.format.clone()));
        }
        if self.matrices.len() != self.d {
            return Err(RepFileError::Shape(format!("d = {} but {} matrices", self.d, self.matrices.len())));
        }
        if let Some(mu) = &self.expected_mu {
            if mu.len() != self.d {
                return Err(RepFileError::Shape(format!("d = {} but {} expected eigenvalues", self.d, mu.len())));
            }
        }
        let n = self.matrices.first().map_or(0, |m| m.len());
        let mut mats = Vec::with_capacity(self.d);
        for (k, rows) in self.matrices.iter().enumerate() {
            if rows.len() != n || rows.iter().any(|r| r.len() != n) {
                return Err(RepFileError::Shape(format!("matrix {} is not {n}x{n}", k + 1)));
            }
            mats.push(CMatrix::from_fn(n, n, |r, c| C64::new(rows[r][c][0], rows[r][c][1])));
        }
        let rep = if self.hermitian { Rep::with_tolerance(mats, hermitian_tol)? } else { Rep::non_hermitian(mats)? };
        Ok(NamedRep {
            name: self.metadata.name.clone().unwrap_or_else(|| "unnamed".into()),
            rep,
            expected_spectrum: self.expected_mu.clone(),
            notes: self.metadata.notes.clone(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("rep file serializes") + "\n"
    }

    pub fn read(path: &Path) -> Result<RepFile, RepFileError> {
        let text = std::fs::read_to_string(path).map_err(|source| RepFileError::Io { path: path.display().to_string(), source })?;
        Ok(serde_json::from_str(&text)?)
    }

    pub fn write(&self, path: &Path) -> Result<(), RepFileError> {
        std::fs::write(path, self.to_json()).map_err(|source| RepFileError::Io { path: path.display().to_string(), source })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{clifford_rep, fuzzy_sphere, fuzzy_torus};

    #[test]
    fn round_trip_is_exact() {
        for nr in [fuzzy_sphere(4, 0.3).unwrap(), fuzzy_torus(5, 0.1, 0.2).unwrap(), clifford_rep(2, 2).unwrap()] {
            let file = RepFile::from_named(&nr);
            let parsed: RepFile = serde_json::from_str(&file.to_json()).unwrap();
            assert_eq!(parsed, file);
            let back = parsed.to_named(1e-12).unwrap();
            assert_eq!(back, nr);
            assert_eq!(back.verify(1e-10), nr.verify(1e-10));
        }
    }

    #[test]
    fn rejects_bad_input() {
        let mut file = RepFile::from_named(&fuzzy_sphere(2, 0.0).unwrap());
        file.format = "dmsa-rep/9".into();
        assert!(matches!(file.to_named(1e-12), Err(RepFileError::Format(_))));
        let mut file = RepFile::from_named(&fuzzy_sphere(2, 0.0).unwrap());
        file.matrices[1].pop();
        assert!(matches!(file.to_named(1e-12), Err(RepFileError::Shape(_))));
        let mut file = RepFile::from_named(&fuzzy_sphere(2, 0.0).unwrap());
        file.matrices[2][0][1] = [5.0, 0.0];
        assert!(matches!(file.to_named(1e-12), Err(RepFileError::Rep(DmsaError::NotHermitian { index: 2, .. }))));
        file.d = 3;
        assert!(matches!(file.to_named(1e-12), Err(RepFileError::Shape(_))));
        assert!(serde_json::from_str::<RepFile>("{\"format\": 1}").is_err());
    }

    #[test]
    fn minimal_document_parses() {
        let text = r#"{"format":"dmsa-rep/1","d":2,"matrices":[[[[1,0]]],[[[0,0]]]]}"#;
        let nr: NamedRep = serde_json::from_str::<RepFile>(text).unwrap().to_named(1e-12).unwrap();
        assert_eq!((nr.d(), nr.rep.size(), nr.name.as_str()), (2, 1, "unnamed"));
    }
}
