//! Block structure of the ambient space: d = d_1 + ... + d_k.

use crate::error::{Error, Result};

/// The tuple (d_1, ..., d_k) splitting the coordinates of R^d into k
/// consecutive blocks. Norms, the diagonal flow, and the angular region all
/// act block-wise through this type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimensionPartition {
    dims: Vec<usize>,
}

impl DimensionPartition {
    pub fn new(dims: Vec<usize>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidPartition("need at least one block".into()));
        }
        if dims.iter().any(|&d| d == 0) {
            return Err(Error::InvalidPartition(
                "every block dimension must be >= 1".into(),
            ));
        }
        Ok(Self { dims })
    }

    /// Number of blocks k.
    pub fn k(&self) -> usize {
        self.dims.len()
    }

    /// Total dimension d.
    pub fn d(&self) -> usize {
        self.dims.iter().sum()
    }

    /// Block dimensions (d_1, ..., d_k).
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Coordinate range of block j (0-based).
    pub fn block_range(&self, j: usize) -> std::ops::Range<usize> {
        let start: usize = self.dims[..j].iter().sum();
        start..start + self.dims[j]
    }

    /// Borrow the k blocks of a point of R^d.
    pub fn blocks<'a>(&self, z: &'a [f64]) -> Vec<&'a [f64]> {
        assert_eq!(z.len(), self.d(), "point dimension must match partition");
        let mut out = Vec::with_capacity(self.k());
        let mut start = 0;
        for &dj in &self.dims {
            out.push(&z[start..start + dj]);
            start += dj;
        }
        out
    }

    /// Euclidean norms of the k blocks of z.
    pub fn block_norms(&self, z: &[f64]) -> Vec<f64> {
        self.blocks(z)
            .iter()
            .map(|b| crate::matrix::norm(b))
            .collect()
    }
}

impl std::fmt::Display for DimensionPartition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.dims.iter().map(|d| d.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}
