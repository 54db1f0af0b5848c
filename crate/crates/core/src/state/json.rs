//! The state interchange format:
//! `{ "dims": [dA, dB], "matrix": [[[re, im], ...], ...] }`, row-major.

use serde::{Deserialize, Serialize};

use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::matrix::{Complex64, ComplexMatrix};
use crate::tol;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateJson {
    pub dims: [usize; 2],
    pub matrix: Vec<Vec<[f64; 2]>>,
}

impl StateJson {
    pub fn from_state(rho: &DensityMatrix) -> Self {
        let (da, db) = rho.dims();
        Self {
            dims: [da, db],
            matrix: rho
                .matrix()
                .row_vecs()
                .into_iter()
                .map(|row| row.into_iter().map(|z| [z.re, z.im]).collect())
                .collect(),
        }
    }

    /// Validates with the ingestion tolerances (1e-8 on Hermiticity and trace).
    pub fn into_state(self) -> Result<DensityMatrix> {
        let n = self.matrix.len();
        if let Some(row) = self.matrix.iter().find(|r| r.len() != n) {
            return Err(Error::NotSquare { rows: n, cols: row.len() });
        }
        let rows: Vec<Vec<Complex64>> = self
            .matrix
            .iter()
            .map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
            .collect();
        let m = ComplexMatrix::from_rows(&rows)?;
        DensityMatrix::validated((self.dims[0], self.dims[1]), m, tol::PARSE, tol::PARSE)
    }
}

impl DensityMatrix {
    pub fn from_json_str(s: &str) -> Result<Self> {
        let parsed: StateJson = serde_json::from_str(s).map_err(|e| Error::Json(e.to_string()))?;
        parsed.into_state()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&StateJson::from_state(self)).expect("finite state serializes")
    }
}
