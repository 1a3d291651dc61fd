//! Floating-point LLL basis reduction with the integer change-of-basis
//! matrix tracked alongside, so coefficients found in a reduced frame can be
//! mapped back to the caller's basis exactly.

use crate::error::{Error, Result};
use crate::lattice::LatticeBasis;
use crate::matrix;

pub const DEFAULT_DELTA: f64 = 0.99;

/// Gram-Schmidt vectors and coefficients of the rows, recomputed from
/// scratch (cheap at these dimensions, and immune to update drift).
fn gram_schmidt(rows: &[Vec<f64>]) -> Result<(Vec<Vec<f64>>, Vec<Vec<f64>>)> {
    let n = rows.len();
    let mut bstar: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut mu = vec![vec![0.0; n]; n];
    for i in 0..n {
        let mut v = rows[i].clone();
        for j in 0..i {
            let denom = matrix::dot(&bstar[j], &bstar[j]);
            mu[i][j] = matrix::dot(&rows[i], &bstar[j]) / denom;
            for (vc, bc) in v.iter_mut().zip(&bstar[j]) {
                *vc -= mu[i][j] * bc;
            }
        }
        if matrix::dot(&v, &v) < 1e-28 {
            return Err(Error::SingularMatrix);
        }
        bstar.push(v);
    }
    Ok((bstar, mu))
}

/// Norms of the Gram-Schmidt vectors of the basis as given (no reduction).
pub fn gram_schmidt_norms(basis: &LatticeBasis) -> Result<Vec<f64>> {
    let (bstar, _) = gram_schmidt(basis.rows())?;
    Ok(bstar.iter().map(|v| matrix::norm(v)).collect())
}

/// LLL-reduce, returning the new basis and the integer transform U with
/// reduced = U . original (rows); det U = +-1, so both span the same
/// lattice and coefficients transform by m_original = m_reduced . U.
pub fn lll_reduce_with_transform(
    basis: &LatticeBasis,
    delta: f64,
) -> Result<(LatticeBasis, Vec<Vec<i64>>)> {
    if !(delta > 0.25 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "LLL delta must lie in (0.25, 1), got {delta}"
        )));
    }
    let n = basis.dim();
    let mut rows = basis.rows().to_vec();
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut r = vec![0i64; n];
            r[i] = 1;
            r
        })
        .collect();

    let mut k = 1;
    let mut steps = 0usize;
    let cap = 10_000 + 1_000 * n * n;
    while k < n {
        steps += 1;
        if steps > cap {
            return Err(Error::UnsupportedConfiguration(
                "LLL failed to converge; basis is numerically degenerate".into(),
            ));
        }
        // size-reduce row k against all earlier rows; the Gram-Schmidt data
        // is recomputed per step because each subtraction shifts it
        for j in (0..k).rev() {
            let (bstar, _) = gram_schmidt(&rows)?;
            let m = matrix::dot(&rows[k], &bstar[j]) / matrix::dot(&bstar[j], &bstar[j]);
            let r = m.round();
            if r != 0.0 {
                let ri = r as i64;
                for c in 0..n {
                    let sub = r * rows[j][c];
                    rows[k][c] -= sub;
                    u[k][c] -= ri * u[j][c];
                }
            }
        }
        let (bstar, mu) = gram_schmidt(&rows)?;
        let lhs = matrix::dot(&bstar[k], &bstar[k]);
        let rhs = (delta - mu[k][k - 1] * mu[k][k - 1]) * matrix::dot(&bstar[k - 1], &bstar[k - 1]);
        if lhs >= rhs {
            k += 1;
        } else {
            rows.swap(k, k - 1);
            u.swap(k, k - 1);
            k = k.max(2) - 1;
        }
    }
    Ok((LatticeBasis::new(rows)?, u))
}

/// LLL-reduce with the default transform discarded.
pub fn lll_reduce(basis: &LatticeBasis, delta: f64) -> Result<LatticeBasis> {
    Ok(lll_reduce_with_transform(basis, delta)?.0)
}
