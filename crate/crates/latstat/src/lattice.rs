//! Lattice bases (rows are basis vectors), their text file format, and the
//! determinant-one diagonal flow a(u) that scales coordinate blocks.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix;
use crate::partition::DimensionPartition;

/// A full-rank lattice { m . basis : m integer row vector } in R^d.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeBasis {
    dim: usize,
    rows: Vec<Vec<f64>>,
    det_abs: f64,
}

impl LatticeBasis {
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidParameter(
                "basis must be a nonempty square row matrix".into(),
            ));
        }
        if rows.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter(
                "basis entries must be finite".into(),
            ));
        }
        let det = matrix::det(&rows);
        if det == 0.0 || !det.is_finite() {
            return Err(Error::SingularMatrix);
        }
        Ok(Self {
            dim,
            rows,
            det_abs: det.abs(),
        })
    }

    pub fn identity(dim: usize) -> Self {
        let rows = (0..dim)
            .map(|i| {
                let mut r = vec![0.0; dim];
                r[i] = 1.0;
                r
            })
            .collect();
        Self {
            dim,
            rows,
            det_abs: 1.0,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.rows[i]
    }

    pub fn det_abs(&self) -> f64 {
        self.det_abs
    }

    /// The lattice point with integer coefficients m: z_i = sum_j m_j b_{ji}.
    ///
    /// This is the one reconstruction path used by every counter in the
    /// crate; fixed iteration order makes z bit-identical no matter which
    /// reduced or flowed intermediate basis produced the coefficients.
    pub fn point(&self, coeffs: &[i64]) -> Vec<f64> {
        let mut z = vec![0.0; self.dim];
        self.point_into(coeffs, &mut z);
        z
    }

    /// As [`point`](Self::point), writing into a caller buffer (the
    /// enumeration hot path calls this once per candidate).
    pub fn point_into(&self, coeffs: &[i64], out: &mut [f64]) {
        assert_eq!(coeffs.len(), self.dim, "coefficient length != dim");
        assert_eq!(out.len(), self.dim, "output length != dim");
        out.fill(0.0);
        for (mj, row) in coeffs.iter().zip(&self.rows) {
            let mj = *mj as f64;
            for (zi, bi) in out.iter_mut().zip(row) {
                *zi += mj * bi;
            }
        }
    }

    /// Gram matrix G_{ij} = <b_i, b_j> of the basis rows.
    pub fn gram(&self) -> Vec<Vec<f64>> {
        (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| matrix::dot(&self.rows[i], &self.rows[j]))
                    .collect()
            })
            .collect()
    }

    /// Text form: first line the dimension, then one row per line, entries
    /// as shortest round-trip decimals (reading back is bit-exact).
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}", self.dim);
        for row in &self.rows {
            for (i, x) in row.iter().enumerate() {
                if i > 0 {
                    s.push(' ');
                }
                let _ = write!(s, "{x}");
            }
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let dim: usize = lines
            .next()
            .ok_or_else(|| Error::Parse("empty lattice file".into()))?
            .trim()
            .parse()
            .map_err(|e| Error::Parse(format!("bad dimension line: {e}")))?;
        let mut rows = Vec::with_capacity(dim);
        for i in 0..dim {
            let line = lines
                .next()
                .ok_or_else(|| Error::Parse(format!("missing basis row {}", i + 1)))?;
            let row: Vec<f64> = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<f64>()
                        .map_err(|e| Error::Parse(format!("row {}: bad entry {tok:?}: {e}", i + 1)))
                })
                .collect::<Result<_>>()?;
            if row.len() != dim {
                return Err(Error::Parse(format!(
                    "row {}: expected {dim} entries, got {}",
                    i + 1,
                    row.len()
                )));
            }
            rows.push(row);
        }
        Self::new(rows)
    }

    pub fn write_file(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_text())?;
        Ok(())
    }

    pub fn read_file(path: &Path) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }
}

/// The diagonal flow a(u): block j < k scales by e^{u_j}, the last block by
/// e^{-sum_j d_j u_j / d_k}, so det a(u) = 1.
#[derive(Debug, Clone)]
pub struct DiagonalFlow {
    u: Vec<f64>,
    partition: DimensionPartition,
}

impl DiagonalFlow {
    pub fn new(u: Vec<f64>, partition: DimensionPartition) -> Result<Self> {
        if u.len() + 1 != partition.k() {
            return Err(Error::DimensionMismatch {
                expected: partition.k() - 1,
                got: u.len(),
            });
        }
        Ok(Self { u, partition })
    }

    pub fn u(&self) -> &[f64] {
        &self.u
    }

    pub fn partition(&self) -> &DimensionPartition {
        &self.partition
    }

    /// Per-block scale factors (length k).
    pub fn scale_factors(&self) -> Vec<f64> {
        let dims = self.partition.dims();
        let k = self.partition.k();
        let mut out = Vec::with_capacity(k);
        let mut weighted = 0.0;
        for j in 0..k - 1 {
            out.push(self.u[j].exp());
            weighted += dims[j] as f64 * self.u[j];
        }
        out.push((-weighted / dims[k - 1] as f64).exp());
        out
    }

    /// Per-coordinate scale factors (length d).
    pub fn coordinate_scales(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(self.partition.d());
        for (f, &dj) in self.scale_factors().iter().zip(self.partition.dims()) {
            out.extend(std::iter::repeat(*f).take(dj));
        }
        out
    }

    pub fn apply_point(&self, z: &[f64]) -> Vec<f64> {
        assert_eq!(z.len(), self.partition.d());
        self.coordinate_scales()
            .iter()
            .zip(z)
            .map(|(f, x)| f * x)
            .collect()
    }

    pub fn apply_basis(&self, basis: &LatticeBasis) -> Result<LatticeBasis> {
        if basis.dim() != self.partition.d() {
            return Err(Error::DimensionMismatch {
                expected: self.partition.d(),
                got: basis.dim(),
            });
        }
        let scales = self.coordinate_scales();
        let rows = basis
            .rows()
            .iter()
            .map(|row| row.iter().zip(&scales).map(|(x, f)| f * x).collect())
            .collect();
        LatticeBasis::new(rows)
    }

    /// a(-u).
    pub fn inverse(&self) -> Self {
        Self {
            u: self.u.iter().map(|x| -x).collect(),
            partition: self.partition.clone(),
        }
    }

    /// Group law a(u)a(v) = a(u+v).
    pub fn compose(&self, other: &DiagonalFlow) -> Result<Self> {
        if self.partition != other.partition {
            return Err(Error::InvalidPartition(
                "flows live on different partitions".into(),
            ));
        }
        Ok(Self {
            u: self.u.iter().zip(&other.u).map(|(a, b)| a + b).collect(),
            partition: self.partition.clone(),
        })
    }
}
