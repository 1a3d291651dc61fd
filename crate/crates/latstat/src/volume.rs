//! Closed-form volume of the counting domains.
//!
//! In (u, s, xi) coordinates the domain is, for each s in log I, a dilated
//! simplex delta_T(s) S_1 + v_T in u, a slab in s with density e^s/d_k, and
//! the region B in xi. Integrating out u and xi gives
//!
//!   Vol = kappa(B)/(d_k (k-1)! d_1...d_{k-1}) * int_{log I} (d log T - s)^{k-1} e^s ds,
//!
//! and the s-integral has an elementary antiderivative, making the volume a
//! polynomial in log T of degree k-1. This module evaluates that polynomial.

use crate::domain::{DomainSpec, Interval};
use crate::error::Result;
use crate::partition::DimensionPartition;
use crate::region::AngularRegion;

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

fn binomial(n: usize, m: usize) -> f64 {
    factorial(n) / (factorial(m) * factorial(n - m))
}

/// Volume of the corner simplex S_1 = { u < 0, sum u > -1 } in dimension m:
/// 1/m!.
pub fn corner_simplex_volume(m: usize) -> f64 {
    1.0 / factorial(m)
}

/// Coefficients (constant term first) of Vol as a polynomial in t = log T.
///
/// Expanding the antiderivative e^s * sum_j (k-1)!/j! (d t - s)^j at the
/// endpoints of log I and collecting powers of t:
///   coeff_m = C * sum_{j >= m} (k-1)!/j! * C(j, m) * d^m *
///             [hi (-log hi)^{j-m} - lo (-log lo)^{j-m}],
/// with C = kappa(B) / (d_k (k-1)! d_1...d_{k-1}) and e^{log hi} = hi exactly.
pub fn volume_polynomial(
    partition: &DimensionPartition,
    interval: &Interval,
    region: &AngularRegion,
) -> Vec<f64> {
    let k = partition.k();
    let d = partition.d() as f64;
    let dims = partition.dims();
    let kappa = region.measure(partition);
    let prod_lower: f64 = dims[..k - 1].iter().map(|&x| x as f64).product();
    let c = kappa / (dims[k - 1] as f64 * prod_lower * factorial(k - 1));
    let (lo, hi) = (interval.lo(), interval.hi());
    let (la, lb) = (interval.log_lo(), interval.log_hi());
    let mut coeffs = vec![0.0; k];
    for (m, cm) in coeffs.iter_mut().enumerate() {
        let mut acc = 0.0;
        for j in m..k {
            let endpoint_diff =
                hi * (-lb).powi((j - m) as i32) - lo * (-la).powi((j - m) as i32);
            acc += factorial(k - 1) / factorial(j) * binomial(j, m) * d.powi(m as i32)
                * endpoint_diff;
        }
        *cm = c * acc;
    }
    coeffs
}

/// Vol(Omega_T(I, B)) in closed form. Errors when T is not above the
/// validity threshold sup(I)^(1/d).
pub fn domain_volume(spec: &DomainSpec) -> Result<f64> {
    spec.require_volume_threshold()?;
    let coeffs = volume_polynomial(spec.partition(), spec.interval(), spec.region());
    let t = spec.log_t();
    // Horner evaluation at t = log T
    let mut v = 0.0;
    for &c in coeffs.iter().rev() {
        v = v * t + c;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::matrix;
    use crate::region::RegionFactor;
    use approx::assert_relative_eq;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn part(dims: &[usize]) -> DimensionPartition {
        DimensionPartition::new(dims.to_vec()).unwrap()
    }

    /// Independent 2-D analytic oracle, derived by splitting the hyperbola
    /// strip {xy in (1,e), 0 < x,y < T} at x = e/T and x = 1/T for T = e^2:
    ///   area = int_{1/T}^{e/T} (T - 1/x) dx + int_{e/T}^{T} (e-1)/x dx
    ///        = (e - 2) + 3(e - 1) = 4e - 5.
    /// The domain with B = {+}x{+} is exactly that strip.
    const TWO_D_ORACLE: f64 = 4.0 * std::f64::consts::E - 5.0;

    #[test]
    fn closed_form_matches_two_d_analytic_oracle() {
        let p = part(&[1, 1]);
        let spec = DomainSpec::new(
            p.clone(),
            Interval::new(1.0, std::f64::consts::E).unwrap(),
            AngularRegion::new(
                &p,
                vec![
                    RegionFactor::SignSet {
                        plus: true,
                        minus: false,
                    },
                    RegionFactor::SignSet {
                        plus: true,
                        minus: false,
                    },
                ],
            )
            .unwrap(),
            std::f64::consts::E.powi(2),
        )
        .unwrap();
        let v = domain_volume(&spec).unwrap();
        assert_relative_eq!(v, TWO_D_ORACLE, max_relative = 1e-12);
        // ~ 5.8731
        assert!((v - 5.8731).abs() < 1e-4);
    }

    #[test]
    fn leading_coefficient_matches_formula() {
        // leading coeff = d^{k-1}/(d_1...d_k) * Leb(I) * Vol(S_1) * kappa(B)
        let p = part(&[3, 2, 1]);
        let i = Interval::new(0.5, 2.5).unwrap();
        let b = AngularRegion::full(&p);
        let coeffs = volume_polynomial(&p, &i, &b);
        assert_eq!(coeffs.len(), 3);
        let d = 6.0f64;
        let expect = d.powi(2) / 6.0 * i.length() * corner_simplex_volume(2) * b.measure(&p);
        assert_relative_eq!(coeffs[2], expect, max_relative = 1e-12);
    }

    #[test]
    fn below_threshold_is_an_error_naming_it() {
        let p = part(&[1, 1]);
        let spec = DomainSpec::new(
            p.clone(),
            Interval::new(1.0, 100.0).unwrap(),
            AngularRegion::full(&p),
            9.0, // threshold is 10
        )
        .unwrap();
        match domain_volume(&spec) {
            Err(Error::BelowThreshold { threshold, .. }) => {
                assert_relative_eq!(threshold, 10.0, epsilon = 1e-12)
            }
            other => panic!("expected threshold error, got {other:?}"),
        }
    }

    /// Monte Carlo box-sampling oracle (a lighter version of the acceptance
    /// run): sample the bounding box uniformly, compare the hit fraction.
    #[test]
    fn monte_carlo_box_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let p = part(&[2, 1]);
        let spec = DomainSpec::new(
            p.clone(),
            Interval::new(1.0, 3.0).unwrap(),
            AngularRegion::full(&p),
            (1.2f64).exp(),
        )
        .unwrap();
        let vol = domain_volume(&spec).unwrap();
        let t = spec.t();
        let n = 400_000;
        let mut hits = 0u64;
        for _ in 0..n {
            let z: Vec<f64> = (0..3).map(|_| rng.random_range(-t..t)).collect();
            if spec.contains(&z) {
                hits += 1;
            }
        }
        let boxvol = (2.0 * t).powi(3);
        let frac = hits as f64 / n as f64;
        let est = boxvol * frac;
        let se = boxvol * (frac * (1.0 - frac) / n as f64).sqrt();
        assert!(
            (est - vol).abs() < 3.0 * se,
            "MC {est} vs closed form {vol}, 3se = {}",
            3.0 * se
        );
    }

    /// The volume really is a degree-(k-1) polynomial in log T: fit it
    /// through k sampled cutoffs and predict others.
    #[test]
    fn polynomial_in_log_t() {
        let p = part(&[2, 2, 1]);
        let i = Interval::new(0.8, 2.0).unwrap();
        let b = AngularRegion::full(&p);
        let spec_at = |t: f64| {
            DomainSpec::new(p.clone(), i, b.clone(), t.exp()).unwrap()
        };
        // fit on t = 3, 4, 5 (Vandermonde solve)
        let ts = [3.0, 4.0, 5.0];
        let vols: Vec<f64> = ts
            .iter()
            .map(|&t| domain_volume(&spec_at(t)).unwrap())
            .collect();
        let vander: Vec<Vec<f64>> = ts
            .iter()
            .map(|&t| (0..3).map(|m| t.powi(m)).collect())
            .collect();
        // coefficients from solving V c = vols, i.e. c = V^{-1} vols
        let inv = matrix::invert(&vander).unwrap();
        let coeffs: Vec<f64> = (0..3)
            .map(|m| (0..3).map(|r| inv[m][r] * vols[r]).sum::<f64>())
            .collect();
        for &t in &[6.0, 8.5, 12.0] {
            let direct = domain_volume(&spec_at(t)).unwrap();
            let predicted = coeffs[0] + coeffs[1] * t + coeffs[2] * t * t;
            assert_relative_eq!(predicted, direct, max_relative = 1e-9);
        }
    }
}
