//! The Kolmogorov-Smirnov distance between a sample and a reference law.

use crate::error::{Error, Result};

/// sup_x |F_n(x) - F(x)|: over the sorted samples x_(1) <= .. <= x_(n),
/// the larger of the two one-sided gaps at each jump of the empirical CDF.
pub fn ks_statistic<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<f64> {
    let n = samples.len();
    if n == 0 {
        return Err(Error::InsufficientSamples { need: 1, got: 0 });
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("samples must not contain NaN"));
    let nf = n as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in sorted.iter().enumerate() {
        let f = cdf(x);
        d = d
            .max(((i + 1) as f64 / nf - f).abs())
            .max((i as f64 / nf - f).abs());
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::normal::normal_cdf;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn uniform01(x: f64) -> f64 {
        x.clamp(0.0, 1.0)
    }

    #[test]
    fn single_midpoint_sample() {
        // F(0.5) = 0.5; gaps |1 - 0.5| and |0 - 0.5| both 0.5
        assert_eq!(ks_statistic(&[0.5], uniform01).unwrap(), 0.5);
        assert!(ks_statistic(&[], uniform01).is_err());
    }

    #[test]
    fn exact_quantiles_leave_half_a_step() {
        let n = 80;
        let samples: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        let d = ks_statistic(&samples, uniform01).unwrap();
        assert!((d - 0.5 / n as f64).abs() < 1e-12, "d = {d}");
    }

    /// The statistic only sees ranks: applying a strictly increasing map to
    /// the samples and precomposing the CDF with its inverse changes nothing.
    #[test]
    fn invariant_under_monotone_transforms() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let samples: Vec<f64> = (0..500).map(|_| rng.random_range(0.0..1.0)).collect();
        let base = ks_statistic(&samples, uniform01).unwrap();

        let exp: Vec<f64> = samples.iter().map(|x| x.exp()).collect();
        let d1 = ks_statistic(&exp, |y: f64| uniform01(y.ln())).unwrap();

        let affine: Vec<f64> = samples.iter().map(|x| 3.0 * x - 2.0).collect();
        let d2 = ks_statistic(&affine, |y: f64| uniform01((y + 2.0) / 3.0)).unwrap();

        let cube: Vec<f64> = samples.iter().map(|x| x.powi(3)).collect();
        let d3 = ks_statistic(&cube, |y: f64| uniform01(y.cbrt())).unwrap();

        for (name, d) in [("exp", d1), ("affine", d2), ("cube", d3)] {
            assert!(
                (d - base).abs() < 1e-12,
                "{name} transform moved the statistic: {d} vs {base}"
            );
        }
    }

    /// Calibration against the asymptotic Kolmogorov law: the 99% quantile
    /// of sqrt(n) D_n is 1.628 for large n.
    #[test]
    fn calibrated_on_true_normal_draws() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let n = 10_000;
        let samples: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        let d = ks_statistic(&samples, |x| normal_cdf(x, 1.0).unwrap()).unwrap();
        assert!(
            d < 1.628 / (n as f64).sqrt(),
            "KS distance {d} beyond the 99% band"
        );
    }
}
