//! JSON encodings shared by the report types and the gate/basis documents.
//!
//! Complex numbers are `[re, im]` pairs; matrices are row-major nested arrays.
//! Gate and basis documents are written with 17 significant digits so that
//! `write(read(x)) == x` byte for byte.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{Mat2, Mat4, StateVec, C64};

pub type ComplexPair = [f64; 2];

pub fn pair(z: C64) -> ComplexPair {
    [z.re, z.im]
}

pub fn rows2(m: &Mat2) -> [[ComplexPair; 2]; 2] {
    [
        [pair(m[(0, 0)]), pair(m[(0, 1)])],
        [pair(m[(1, 0)]), pair(m[(1, 1)])],
    ]
}

pub fn rows4(m: &Mat4) -> [[ComplexPair; 4]; 4] {
    std::array::from_fn(|r| std::array::from_fn(|c| pair(m[(r, c)])))
}

pub mod complex {
    use super::*;
    pub fn serialize<S: Serializer>(z: &C64, s: S) -> std::result::Result<S::Ok, S::Error> {
        pair(*z).serialize(s)
    }
}

pub mod mat2 {
    use super::*;
    pub fn serialize<S: Serializer>(m: &Mat2, s: S) -> std::result::Result<S::Ok, S::Error> {
        rows2(m).serialize(s)
    }
}

pub mod mat4 {
    use super::*;
    pub fn serialize<S: Serializer>(m: &Mat4, s: S) -> std::result::Result<S::Ok, S::Error> {
        rows4(m).serialize(s)
    }
}

pub mod opt_mat2 {
    use super::*;
    pub fn serialize<S: Serializer>(
        m: &Option<Mat2>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        m.as_ref().map(rows2).serialize(s)
    }
}

pub mod opt_mat2_pair {
    use super::*;
    pub fn serialize<S: Serializer>(
        m: &Option<(Mat2, Mat2)>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        m.as_ref().map(|(a, b)| [rows2(a), rows2(b)]).serialize(s)
    }
}

pub mod mat2_array4 {
    use super::*;
    pub fn serialize<S: Serializer>(m: &[Mat2; 4], s: S) -> std::result::Result<S::Ok, S::Error> {
        m.iter().map(rows2).collect::<Vec<_>>().serialize(s)
    }
}

pub mod statevec {
    use super::*;
    pub fn serialize<S: Serializer>(v: &StateVec, s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(|z| pair(*z)).collect::<Vec<_>>().serialize(s)
    }
}

pub mod statevec_array4 {
    use super::*;
    pub fn serialize<S: Serializer>(
        v: &[StateVec; 4],
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        v.iter()
            .map(|v| v.iter().map(|z| pair(*z)).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }
}

pub mod opt_statevec {
    use super::*;
    pub fn serialize<S: Serializer>(
        v: &Option<StateVec>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        v.as_ref()
            .map(|v| v.iter().map(|z| pair(*z)).collect::<Vec<_>>())
            .serialize(s)
    }
}

/// On-disk gate: `{"name": ..., "matrix": [[[re, im] × 4] × 4]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub matrix: [[ComplexPair; 4]; 4],
}

/// On-disk basis: `{"name": ..., "vectors": [[[re, im] × 4] × 4]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub vectors: [[ComplexPair; 4]; 4],
}

impl GateDocument {
    pub fn from_matrix(name: Option<String>, m: &Mat4) -> Self {
        Self {
            name,
            matrix: rows4(m),
        }
    }

    pub fn to_matrix(&self) -> Mat4 {
        Mat4::from_fn(|r, c| C64::new(self.matrix[r][c][0], self.matrix[r][c][1]))
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidParameter(format!("gate document: {e}")))
    }

    pub fn write(&self) -> String {
        write_document(self.name.as_deref(), "matrix", &self.matrix)
    }
}

impl BasisDocument {
    pub fn from_vectors(name: Option<String>, vectors: &[StateVec; 4]) -> Self {
        Self {
            name,
            vectors: std::array::from_fn(|j| std::array::from_fn(|i| pair(vectors[j][i]))),
        }
    }

    pub fn to_vectors(&self) -> [StateVec; 4] {
        std::array::from_fn(|j| {
            StateVec::from_fn(4, |i, _| {
                C64::new(self.vectors[j][i][0], self.vectors[j][i][1])
            })
        })
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text)
            .map_err(|e| Error::InvalidParameter(format!("basis document: {e}")))
    }

    pub fn write(&self) -> String {
        write_document(self.name.as_deref(), "vectors", &self.vectors)
    }
}

/// `{:.16e}` gives 17 significant digits, enough to round-trip any `f64`.
pub fn number(x: f64) -> String {
    if x == 0.0 {
        // keep the sign of negative zero
        return if x.is_sign_negative() {
            "-0.0".into()
        } else {
            "0.0".into()
        };
    }
    format!("{x:.16e}")
}

fn write_document(name: Option<&str>, key: &str, rows: &[[ComplexPair; 4]; 4]) -> String {
    let mut out = String::from("{\n");
    if let Some(name) = name {
        let quoted = serde_json::to_string(name).expect("string serializes");
        let _ = writeln!(out, "  \"name\": {quoted},");
    }
    let _ = writeln!(out, "  \"{key}\": [");
    for (r, row) in rows.iter().enumerate() {
        let cells: Vec<String> = row
            .iter()
            .map(|[re, im]| format!("[{}, {}]", number(*re), number(*im)))
            .collect();
        let sep = if r + 1 < rows.len() { "," } else { "" };
        let _ = writeln!(out, "    [{}]{sep}", cells.join(", "));
    }
    out.push_str("  ]\n}\n");
    out
}
