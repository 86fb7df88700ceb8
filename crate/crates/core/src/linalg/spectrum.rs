use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Eigenvalues (descending) with optional eigenvectors and diagnostics.
///
/// Serializes to `{"eigenvalues": [...], "residuals": [...], "iterations": n}`;
/// eigenvectors go to a separate binary file, see [`write_eigenvectors`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumResult {
    pub eigenvalues: Vec<f64>,
    #[serde(skip)]
    pub eigenvectors: Option<Vec<Vec<f64>>>,
    /// `||Op v - z v||` per returned pair; empty when no vectors were computed.
    pub residuals: Vec<f64>,
    pub iterations: usize,
}

impl SpectrumResult {
    pub fn leading(&self) -> Option<f64> {
        self.eigenvalues.first().copied()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }
}

/// Writes eigenvectors as: `u64` little-endian vector count, then every
/// vector's entries as little-endian `f64`, one vector after another
/// (row-major with one row per eigenvector). The dimension is implied by
/// the payload length.
pub fn write_eigenvectors<W: Write>(out: &mut W, vectors: &[Vec<f64>]) -> Result<()> {
    if let Some(first) = vectors.first() {
        if vectors.iter().any(|v| v.len() != first.len()) {
            return Err(Error::InvalidArgument(
                "eigenvectors differ in length".into(),
            ));
        }
    }
    out.write_all(&(vectors.len() as u64).to_le_bytes())?;
    for v in vectors {
        for x in v {
            out.write_all(&x.to_le_bytes())?;
        }
    }
    Ok(())
}

pub fn read_eigenvectors<R: Read>(input: &mut R) -> Result<Vec<Vec<f64>>> {
    let mut header = [0u8; 8];
    input.read_exact(&mut header)?;
    let count = u64::from_le_bytes(header) as usize;
    let mut payload = Vec::new();
    input.read_to_end(&mut payload)?;
    if count == 0 {
        return if payload.is_empty() {
            Ok(Vec::new())
        } else {
            Err(Error::InvalidArgument(
                "payload present for zero vectors".into(),
            ))
        };
    }
    if payload.len() % (8 * count) != 0 {
        return Err(Error::InvalidArgument(format!(
            "payload of {} bytes does not split into {count} f64 vectors",
            payload.len()
        )));
    }
    let dim = payload.len() / (8 * count);
    let values: Vec<f64> = payload
        .chunks_exact(8)
        .map(|b| f64::from_le_bytes(b.try_into().expect("chunk of 8")))
        .collect();
    Ok(values
        .chunks_exact(dim.max(1))
        .map(<[f64]>::to_vec)
        .take(count)
        .collect())
}
