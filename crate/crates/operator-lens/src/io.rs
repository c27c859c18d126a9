//! Matrix (de)serialization: a small JSON document with a `dim` field and a
//! `dim x dim` array of `[re, im]` pairs. Round-trips are bitwise exact for
//! finite entries.

use serde::{Deserialize, Serialize};

use crate::error::{OpError, Result};
use crate::matrix::{C64, ComplexMatrix};

/// On-disk matrix document.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct MatrixFile {
    pub dim: usize,
    pub data: Vec<Vec<[f64; 2]>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix) -> Self {
        let n = m.dim();
        MatrixFile {
            dim: n,
            data: (0..n)
                .map(|i| (0..n).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        if self.dim == 0 {
            return Err(OpError::Parse("dim must be at least 1".into()));
        }
        if self.data.len() != self.dim {
            return Err(OpError::Parse(format!(
                "expected {} rows, found {}",
                self.dim,
                self.data.len()
            )));
        }
        for (i, row) in self.data.iter().enumerate() {
            if row.len() != self.dim {
                return Err(OpError::Parse(format!(
                    "row {} has {} entries, expected {}",
                    i,
                    row.len(),
                    self.dim
                )));
            }
            for (j, entry) in row.iter().enumerate() {
                if !entry[0].is_finite() || !entry[1].is_finite() {
                    return Err(OpError::Parse(format!(
                        "entry ({i}, {j}) is not finite"
                    )));
                }
            }
        }
        Ok(ComplexMatrix::from_fn(self.dim, self.dim, |i, j| {
            C64::new(self.data[i][j][0], self.data[i][j][1])
        }))
    }
}

/// Parse a matrix from JSON text.
pub fn parse_matrix(text: &str) -> Result<ComplexMatrix> {
    let file: MatrixFile =
        serde_json::from_str(text).map_err(|e| OpError::Parse(e.to_string()))?;
    file.to_matrix()
}

/// Serialize a matrix to pretty JSON text.
pub fn serialize_matrix(m: &ComplexMatrix) -> String {
    serde_json::to_string_pretty(&MatrixFile::from_matrix(m)).expect("matrix JSON")
}

/// Serialize a matrix to single-line JSON (used for inline log records).
pub fn serialize_matrix_compact(m: &ComplexMatrix) -> String {
    serde_json::to_string(&MatrixFile::from_matrix(m)).expect("matrix JSON")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bitwise() {
        let m = ComplexMatrix::from_fn(3, 3, |i, j| {
            C64::new(
                (i as f64 + 0.1) / (j as f64 + 0.7),
                -(j as f64) * 0.3 + 1.0 / (i as f64 + 3.0),
            )
        });
        let text = serialize_matrix(&m);
        let back = parse_matrix(&text).unwrap();
        assert_eq!(back, m);
        let compact = serialize_matrix_compact(&m);
        assert!(!compact.contains('\n'));
        assert_eq!(parse_matrix(&compact).unwrap(), m);
    }

    #[test]
    fn malformed_documents_are_rejected() {
        assert!(parse_matrix("not json").is_err());
        assert!(parse_matrix("{\"dim\": 2, \"data\": [[[1,0]]]}").is_err());
        assert!(parse_matrix("{\"dim\": 0, \"data\": []}").is_err());
        assert!(parse_matrix(
            "{\"dim\": 1, \"data\": [[[1e999, 0]]]}"
        )
        .is_err());
        // ragged row
        assert!(parse_matrix("{\"dim\": 2, \"data\": [[[1,0],[0,0]],[[0,0]]]}").is_err());
    }

    #[test]
    fn exact_binary_values_survive() {
        let vals = [0.1, 1.0 / 3.0, f64::MIN_POSITIVE, 1e300, -0.0];
        let m = ComplexMatrix::from_fn(1, 1, |_, _| C64::new(vals[1], vals[0]));
        let back = parse_matrix(&serialize_matrix(&m)).unwrap();
        assert_eq!(back[(0, 0)].re.to_bits(), m[(0, 0)].re.to_bits());
        assert_eq!(back[(0, 0)].im.to_bits(), m[(0, 0)].im.to_bits());
    }
}
