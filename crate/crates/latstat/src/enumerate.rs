//! Lattice point enumeration: a single depth-first Fincke-Pohst core over
//! integer coefficients inside a weighted ellipsoid, plus an exact
//! axis-aligned-box wrapper. Interval bounds carry a 1e-9 completeness
//! margin; borderline box decisions are settled by a compensated
//! recomputation, so enumeration never silently drops a boundary point.

use crate::error::{Error, Result};
use crate::lattice::LatticeBasis;
use crate::matrix;

/// Closed per-coordinate bounds lo_i <= z_i <= hi_i.
#[derive(Debug, Clone)]
pub struct BoxConstraint {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl BoxConstraint {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        if lo.len() != hi.len() || lo.is_empty() {
            return Err(Error::InvalidParameter(
                "box bounds must be nonempty and of equal length".into(),
            ));
        }
        for (l, h) in lo.iter().zip(&hi) {
            if !(l <= h) || !l.is_finite() || !h.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "box needs finite lo <= hi, got [{l}, {h}]"
                )));
            }
        }
        Ok(Self { lo, hi })
    }

    /// The cube [-r, r]^d.
    pub fn centered_cube(dim: usize, r: f64) -> Self {
        Self {
            lo: vec![-r; dim],
            hi: vec![r; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }
}

/// A lattice point together with its integer coefficients in the basis it
/// was enumerated from.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticePoint {
    pub coeffs: Vec<i64>,
    pub point: Vec<f64>,
}

const MARGIN: f64 = 1e-9;

struct Dfs<'a> {
    l: Vec<Vec<f64>>,
    m0: Vec<f64>,
    acc: Vec<Vec<f64>>,
    coeffs: Vec<i64>,
    zbuf: Vec<f64>,
    basis: &'a LatticeBasis,
    visits: u64,
}

impl Dfs<'_> {
    fn run(&mut self, level: usize, rem: f64, visit: &mut dyn FnMut(&[i64], &[f64])) {
        let lii = self.l[level][level];
        let inner = self.acc[level][level];
        let s = rem.max(0.0).sqrt();
        let lo = ((-s - inner) / lii + self.m0[level] - MARGIN).ceil() as i64;
        let hi = ((s - inner) / lii + self.m0[level] + MARGIN).floor() as i64;
        for m in lo..=hi {
            let x = m as f64 - self.m0[level];
            let y = lii * x + inner;
            let rem2 = rem - y * y;
            if rem2 < 0.0 {
                continue;
            }
            self.coeffs[level] = m;
            if level == 0 {
                self.visits += 1;
                self.basis.point_into(&self.coeffs, &mut self.zbuf);
                visit(&self.coeffs, &self.zbuf);
            } else {
                {
                    let (lower, upper) = self.acc.split_at_mut(level);
                    for j in 0..level {
                        lower[level - 1][j] = upper[0][j] + x * self.l[level][j];
                    }
                }
                self.run(level - 1, rem2, visit);
            }
        }
    }
}

/// Visit every lattice point z = m . basis with
/// sum_i weights_i (z_i - center_i)^2 <= radius2, slightly inflated for
/// completeness. The visitor receives (coefficients, point); the point is
/// reconstructed through the canonical basis path. Returns the number of
/// candidates visited.
pub fn enumerate_ellipsoid(
    basis: &LatticeBasis,
    weights: &[f64],
    center: &[f64],
    radius2: f64,
    visit: &mut dyn FnMut(&[i64], &[f64]),
) -> Result<u64> {
    let d = basis.dim();
    if weights.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: weights.len(),
        });
    }
    if center.len() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: center.len(),
        });
    }
    if weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
        return Err(Error::InvalidParameter("weights must be positive".into()));
    }
    if !(radius2.is_finite() && radius2 >= 0.0) {
        return Err(Error::InvalidParameter(format!(
            "radius^2 must be a finite nonnegative real, got {radius2}"
        )));
    }
    let rows = basis.rows();
    let mut g = vec![vec![0.0; d]; d];
    for i in 0..d {
        for j in 0..=i {
            let mut s = 0.0;
            for c in 0..d {
                s += weights[c] * rows[i][c] * rows[j][c];
            }
            g[i][j] = s;
            g[j][i] = s;
        }
    }
    let l = matrix::cholesky(&g).ok_or(Error::SingularMatrix)?;
    let binv = matrix::invert(rows).ok_or(Error::SingularMatrix)?;
    let m0 = matrix::row_times_mat(center, &binv);

    let mut dfs = Dfs {
        l,
        m0,
        acc: vec![vec![0.0; d]; d],
        coeffs: vec![0; d],
        zbuf: vec![0.0; d],
        basis,
        visits: 0,
    };
    dfs.run(d - 1, radius2 * (1.0 + 1e-9) + 1e-12, visit);
    Ok(dfs.visits)
}

/// Closed-box acceptance with the borderline band settled by compensated
/// recomputation of the affected coordinate.
fn box_accepts(bx: &BoxConstraint, cols: &[Vec<f64>], coeffs: &[i64], z: &[f64]) -> bool {
    let mut mfloat: Option<Vec<f64>> = None;
    for i in 0..z.len() {
        let (lo, hi) = (bx.lo[i], bx.hi[i]);
        let zi = z[i];
        if zi < lo - MARGIN || zi > hi + MARGIN {
            return false;
        }
        if zi < lo + MARGIN || zi > hi - MARGIN {
            let mf = mfloat
                .get_or_insert_with(|| coeffs.iter().map(|&c| c as f64).collect::<Vec<f64>>());
            let zc = matrix::dot_compensated(mf, &cols[i]);
            if !(zc >= lo && zc <= hi) {
                return false;
            }
        }
    }
    true
}

/// All lattice points inside the closed box, optionally without the origin.
/// Exact: agrees with a naive coefficient scan (see tests); order follows
/// the enumeration tree.
pub fn enumerate_in_box(
    basis: &LatticeBasis,
    bx: &BoxConstraint,
    exclude_origin: bool,
) -> Result<Vec<LatticePoint>> {
    let d = basis.dim();
    if bx.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: bx.dim(),
        });
    }
    let mut center = Vec::with_capacity(d);
    let mut weights = Vec::with_capacity(d);
    for (l, h) in bx.lo.iter().zip(&bx.hi) {
        center.push(0.5 * (l + h));
        let half = 0.5 * (h - l);
        weights.push(1.0 / half.max(1e-12).powi(2));
    }
    // every box point satisfies sum w_i (z_i - c_i)^2 <= d
    let radius2 = d as f64;
    let cols: Vec<Vec<f64>> = (0..d)
        .map(|i| basis.rows().iter().map(|r| r[i]).collect())
        .collect();
    let mut out = Vec::new();
    enumerate_ellipsoid(basis, &weights, &center, radius2, &mut |coeffs, z| {
        if exclude_origin && coeffs.iter().all(|&c| c == 0) {
            return;
        }
        if box_accepts(bx, &cols, coeffs, z) {
            out.push(LatticePoint {
                coeffs: coeffs.to_vec(),
                point: z.to_vec(),
            });
        }
    })?;
    Ok(out)
}
