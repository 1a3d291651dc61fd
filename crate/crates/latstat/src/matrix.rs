//! Small dense linear algebra on row-major matrices.
//!
//! Everything here operates on d x d matrices with d in the single or low
//! double digits, so plain O(d^3) algorithms with partial pivoting are both
//! adequate and easy to audit.

/// Dot product, plain left-to-right accumulation.
///
/// This is deliberately the one and only inner-product code path used when
/// reconstructing lattice points from integer coefficients: identical inputs
/// give bit-identical outputs everywhere in the crate.
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = 0.0;
    for i in 0..a.len() {
        acc += a[i] * b[i];
    }
    acc
}

/// Compensated dot product (2-fold precision): fma-based two-product plus
/// Neumaier summation of the rounding residuals. Used to re-adjudicate
/// enumeration decisions that land inside the safety margin.
pub(crate) fn dot_compensated(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut sum = 0.0;
    let mut comp = 0.0; // running compensation for lost low-order bits
    for i in 0..a.len() {
        let p = a[i] * b[i];
        let p_err = a[i].mul_add(b[i], -p); // exact product residual
        // Neumaier two-sum of p into sum
        let t = sum + p;
        if sum.abs() >= p.abs() {
            comp += (sum - t) + p;
        } else {
            comp += (p - t) + sum;
        }
        sum = t;
        comp += p_err;
    }
    sum + comp
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

/// Matrix product of row-major square matrices.
pub(crate) fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik != 0.0 {
                for j in 0..n {
                    out[i][j] += aik * b[k][j];
                }
            }
        }
    }
    out
}

/// Row vector times matrix: (m B)_j = sum_i m_i B[i][j].
pub(crate) fn row_times_mat(m: &[f64], b: &[Vec<f64>]) -> Vec<f64> {
    let n = b.len();
    let mut out = vec![0.0; n];
    for i in 0..n {
        let mi = m[i];
        if mi != 0.0 {
            for j in 0..n {
                out[j] += mi * b[i][j];
            }
        }
    }
    out
}

/// Determinant by LU decomposition with partial pivoting.
pub(crate) fn det(a: &[Vec<f64>]) -> f64 {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut sign = 1.0;
    let mut result = 1.0;
    for col in 0..n {
        let mut pivot = col;
        for r in col + 1..n {
            if m[r][col].abs() > m[pivot][col].abs() {
                pivot = r;
            }
        }
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            sign = -sign;
        }
        result *= m[col][col];
        for r in col + 1..n {
            let f = m[r][col] / m[col][col];
            for c in col..n {
                let mcc = m[col][c];
                m[r][c] -= f * mcc;
            }
        }
    }
    sign * result
}

/// Inverse by Gauss-Jordan with partial pivoting; `None` when singular.
pub(crate) fn invert(a: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = a.len();
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let mut inv = vec![vec![0.0; n]; n];
    for (i, row) in inv.iter_mut().enumerate() {
        row[i] = 1.0;
    }
    for col in 0..n {
        let mut pivot = col;
        for r in col + 1..n {
            if m[r][col].abs() > m[pivot][col].abs() {
                pivot = r;
            }
        }
        if m[pivot][col] == 0.0 {
            return None;
        }
        m.swap(pivot, col);
        inv.swap(pivot, col);
        let p = m[col][col];
        for c in 0..n {
            m[col][c] /= p;
            inv[col][c] /= p;
        }
        for r in 0..n {
            if r != col && m[r][col] != 0.0 {
                let f = m[r][col];
                for c in 0..n {
                    let mc = m[col][c];
                    let ic = inv[col][c];
                    m[r][c] -= f * mc;
                    inv[r][c] -= f * ic;
                }
            }
        }
    }
    Some(inv)
}

/// Cholesky factor L (lower triangular, G = L L^T) of a symmetric positive
/// definite matrix; `None` when not positive definite.
pub(crate) fn cholesky(g: &[Vec<f64>]) -> Option<Vec<Vec<f64>>> {
    let n = g.len();
    let mut l = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..=i {
            let mut s = g[i][j];
            for k in 0..j {
                s -= l[i][k] * l[j][k];
            }
            if i == j {
                if s <= 0.0 {
                    return None;
                }
                l[i][j] = s.sqrt();
            } else {
                l[i][j] = s / l[j][j];
            }
        }
    }
    Some(l)
}
