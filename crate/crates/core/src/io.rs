//! Matrix file format: a JSON object
//! `{"kind": "real"|"hermitian", "n": <order>, "entries": [[[re, im], ...], ...]}`
//! with row-major `n x n` entries. Writers emit every number as a
//! full-precision decimal (17 significant digits), so reading a written file
//! reproduces the matrix bit-exactly.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::matrix::{MatrixKind, SquareMatrix};
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("malformed matrix file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unknown matrix kind {0:?} (expected \"real\" or \"hermitian\")")]
    BadKind(String),
    #[error("entry grid does not match the declared order {declared}")]
    BadShape { declared: usize },
    #[error(transparent)]
    Matrix(#[from] crate::error::Error),
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    kind: String,
    n: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

/// serde_json formatter that writes floats with 17 significant digits.
struct FullPrecision;

impl serde_json::ser::Formatter for FullPrecision {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }
}

fn kind_label(kind: MatrixKind) -> &'static str {
    match kind {
        MatrixKind::RealSymmetric => "real",
        MatrixKind::Hermitian => "hermitian",
    }
}

/// Serializes a matrix to the JSON file format.
pub fn to_json_string<R: Scalar>(a: &SquareMatrix<R>) -> String {
    let n = a.n();
    let file = MatrixFile {
        kind: kind_label(a.kind()).to_string(),
        n,
        entries: (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let z = a.get(i, j);
                        [
                            z.re.to_f64().expect("finite entry"),
                            z.im.to_f64().expect("finite entry"),
                        ]
                    })
                    .collect()
            })
            .collect(),
    };
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FullPrecision);
    file.serialize(&mut ser).expect("in-memory serialization");
    String::from_utf8(out).expect("serde_json emits utf-8")
}

/// Parses a matrix from the JSON file format, validating kind, shape,
/// finiteness, and exact conjugate symmetry.
pub fn from_json_str<R: Scalar>(s: &str) -> Result<SquareMatrix<R>, IoError> {
    let file: MatrixFile = serde_json::from_str(s)?;
    let kind = match file.kind.as_str() {
        "real" => MatrixKind::RealSymmetric,
        "hermitian" => MatrixKind::Hermitian,
        other => return Err(IoError::BadKind(other.to_string())),
    };
    if file.entries.len() != file.n || file.entries.iter().any(|r| r.len() != file.n) {
        return Err(IoError::BadShape { declared: file.n });
    }
    let rows: Vec<Vec<Complex<R>>> = file
        .entries
        .iter()
        .map(|row| {
            row.iter()
                .map(|&[re, im]| {
                    Complex::new(
                        R::from_f64(re).unwrap_or_else(R::nan),
                        R::from_f64(im).unwrap_or_else(R::nan),
                    )
                })
                .collect()
        })
        .collect();
    Ok(SquareMatrix::new(kind, rows)?)
}

/// Writes a matrix file to disk.
pub fn write_matrix<R: Scalar>(path: &Path, a: &SquareMatrix<R>) -> Result<(), IoError> {
    fs::write(path, to_json_string(a))?;
    Ok(())
}

/// Reads a matrix file from disk.
pub fn read_matrix<R: Scalar>(path: &Path) -> Result<SquareMatrix<R>, IoError> {
    from_json_str(&fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{random_matrix, Distribution};
    use proptest::prelude::*;

    #[test]
    fn round_trip_is_bit_exact() {
        for seed in 0..40u64 {
            let a = random_matrix::<f64>(MatrixKind::Hermitian, 5, Distribution::Gaussian, false, seed)
                .unwrap();
            let restored = from_json_str::<f64>(&to_json_string(&a)).unwrap();
            assert_eq!(a, restored, "seed {seed}");
        }
    }

    #[test]
    fn kind_is_validated() {
        let text = r#"{"kind": "skew", "n": 1, "entries": [[[0.0, 0.0]]]}"#;
        assert!(matches!(from_json_str::<f64>(text), Err(IoError::BadKind(_))));
        let text = r#"{"kind": "real", "n": 2, "entries": [[[0.0, 0.0]]]}"#;
        assert!(matches!(from_json_str::<f64>(text), Err(IoError::BadShape { .. })));
        let text = r#"{"kind": "real", "n": 1, "entries": [[[0.0, 1.0]]]}"#;
        assert!(matches!(from_json_str::<f64>(text), Err(IoError::Matrix(_))));
    }

    #[test]
    fn written_numbers_carry_full_precision() {
        let a = SquareMatrix::<f64>::from_real_rows(&[vec![std::f64::consts::PI]]).unwrap();
        let text = to_json_string(&a);
        assert!(text.contains("3.1415926535897931e0"), "{text}");
    }

    proptest! {
        #[test]
        fn round_trip_arbitrary_entries(x in -1e12f64..1e12, y in -1.0f64..1.0) {
            let rows = vec![
                vec![Complex::new(0.0, 0.0), Complex::new(x, y)],
                vec![Complex::new(x, -y), Complex::new(0.0, 0.0)],
            ];
            let a = SquareMatrix::<f64>::new(MatrixKind::Hermitian, rows).unwrap();
            let restored = from_json_str::<f64>(&to_json_string(&a)).unwrap();
            prop_assert_eq!(a, restored);
        }
    }
}
