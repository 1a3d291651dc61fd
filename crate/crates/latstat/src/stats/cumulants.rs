//! Sample cumulants through the partition expansion
//! cum_r = sum_P (-1)^{|P|-1} (|P|-1)! prod_{blocks} m_{|block|},
//! on centered samples with population (1/n) moments. The coefficient
//! (|P|-1)! is the Moebius function of the partition lattice — the unique
//! inversion under which the 2nd cumulant is the variance and every
//! Gaussian cumulant of order >= 3 vanishes.

use crate::error::{Error, Result};
use crate::stats::partitions::{set_partitions, MAX_ORDER};

/// The r-th sample cumulant, 2 <= r <= 8, needing at least r samples.
pub fn cumulant(samples: &[f64], r: usize) -> Result<f64> {
    if r < 2 || r > MAX_ORDER {
        return Err(Error::InvalidParameter(format!(
            "cumulant order must lie in 2..={MAX_ORDER}, got {r}"
        )));
    }
    let n = samples.len();
    if n < r {
        return Err(Error::InsufficientSamples { need: r, got: n });
    }
    let mean = samples.iter().sum::<f64>() / n as f64;
    // centered moments m_1..m_r (m_1 vanishes up to rounding)
    let mut moments = vec![0.0; r + 1];
    for &x in samples {
        let c = x - mean;
        let mut p = 1.0;
        for m in moments.iter_mut().skip(1) {
            p *= c;
            *m += p;
        }
    }
    for m in &mut moments {
        *m /= n as f64;
    }
    let mut factorial = vec![1.0; r + 1];
    for i in 1..=r {
        factorial[i] = factorial[i - 1] * i as f64;
    }
    let mut cum = 0.0;
    for p in set_partitions(r)? {
        let blocks = p.len();
        let sign = if blocks % 2 == 1 { 1.0 } else { -1.0 };
        let mut term = sign * factorial[blocks - 1];
        for block in &p {
            term *= moments[block.len()];
        }
        cum += term;
    }
    Ok(cum)
}
