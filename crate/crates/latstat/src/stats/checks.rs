//! The Monte Carlo verification suites: the mean value identity for Siegel
//! transforms, the mean-square (variance) formula, and the normalized
//! discrepancy distribution runs. Every sample derives its generator from
//! (master seed, sample index), so all reports are independent of the
//! worker count; aggregation happens single-threaded over index-ordered
//! results.

use rayon::prelude::*;
use serde::Serialize;

use crate::alpha::alpha_proxy;
use crate::counting::{count_tiled, siegel_transform, TestFunctionSpec};
use crate::domain::DomainSpec;
use crate::error::{Error, Result};
use crate::quad::adaptive_simpson;
use crate::region::sphere_surface_area;
use crate::sample::{hecke_sample, sample_rng};
use crate::stats::cumulants::cumulant;
use crate::stats::ks::ks_statistic;
use crate::stats::normal::normal_cdf;
use crate::variance::{variance_series, zeta_enclosure, zeta_real};

/// Zeta summation cutoff for the formula assembly here (enclosure width
/// ~ cutoff^{1-d}, far below every tolerance in the checks).
const ZETA_CUTOFF: u64 = 100_000;

/// Batch count for batch-means standard errors.
const BATCHES: usize = 20;

/// How the random lattices are drawn: dimension, Hecke prime, master seed.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SamplerConfig {
    pub dim: usize,
    pub prime: u64,
    pub seed: u64,
}

impl SamplerConfig {
    fn sample(&self, index: u64) -> Result<crate::lattice::LatticeBasis> {
        let mut rng = sample_rng(self.seed, index);
        hecke_sample(self.dim, self.prime, &mut rng)
    }
}

/// Standard error of the mean by batch means: split the index-ordered
/// samples into consecutive batches, take the spread of the batch
/// statistics. Robust to the mild heavy tails the lattice functionals have.
fn batch_se<F: Fn(&[f64]) -> f64>(samples: &[f64], stat: F) -> f64 {
    let b = BATCHES.min(samples.len() / 2);
    if b < 2 {
        return f64::NAN;
    }
    let m = samples.len() / b;
    let stats: Vec<f64> = (0..b).map(|i| stat(&samples[i * m..(i + 1) * m])).collect();
    let mean = stats.iter().sum::<f64>() / b as f64;
    let var = stats.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (b as f64 - 1.0);
    (var / b as f64).sqrt()
}

fn mean(samples: &[f64]) -> f64 {
    samples.iter().sum::<f64>() / samples.len() as f64
}

/// Empirical mean of the Siegel transform against the exact integral.
#[derive(Debug, Clone, Serialize)]
pub struct SiegelReport {
    pub n: usize,
    pub empirical_mean: f64,
    pub expected: f64,
    pub standard_error: f64,
    pub z_score: f64,
}

/// Mean of f-hat over n random lattices versus the integral of f.
pub fn siegel_mvt_check(
    f: &TestFunctionSpec,
    cfg: &SamplerConfig,
    n: usize,
) -> Result<SiegelReport> {
    if n < 4 {
        return Err(Error::InsufficientSamples { need: 4, got: n });
    }
    let expected = f.integral(cfg.dim)?;
    let values: Vec<f64> = (0..n as u64)
        .into_par_iter()
        .map(|i| siegel_transform(f, &cfg.sample(i)?))
        .collect::<Result<_>>()?;
    let empirical_mean = mean(&values);
    let standard_error = batch_se(&values, mean);
    Ok(SiegelReport {
        n,
        empirical_mean,
        expected,
        standard_error,
        z_score: (empirical_mean - expected) / standard_error,
    })
}

/// Empirical variance of the Siegel transform against the mean-square
/// formula (1/zeta(d)) sum_{p,q} (int f(pz)f(qz) + int f(pz)f(-qz)),
/// truncated at max(p,q) <= truncation with a rigorous tail bound, plus the
/// L2 sanity bound on the second moment.
#[derive(Debug, Clone, Serialize)]
pub struct RogersReport {
    pub n: usize,
    pub truncation: u64,
    pub empirical_mean: f64,
    pub empirical_variance: f64,
    pub formula: f64,
    pub tail_bound: f64,
    pub relative_gap: f64,
    pub second_moment: f64,
    pub l2_bound: f64,
}

/// int f(pz) g(qz) dz for g = f or its reflection, per function kind.
fn pair_integral(f: &TestFunctionSpec, dim: usize, p: u64, q: u64, reflect: bool) -> Result<f64> {
    let (pf, qf) = (p as f64, q as f64);
    match f {
        TestFunctionSpec::BallIndicator { radius } => {
            // both factors are balls around 0; reflection changes nothing
            let r = radius / pf.max(qf);
            Ok(crate::counting::ball_volume(dim) * r.powi(dim as i32))
        }
        TestFunctionSpec::BoxIndicator(bx) => {
            let mut vol = 1.0;
            for (lo, hi) in bx.lo().iter().zip(bx.hi()) {
                let (alo, ahi) = (lo / pf, hi / pf);
                let (blo, bhi) = if reflect {
                    (-hi / qf, -lo / qf)
                } else {
                    (lo / qf, hi / qf)
                };
                vol *= (ahi.min(bhi) - alo.max(blo)).max(0.0);
            }
            Ok(vol)
        }
        TestFunctionSpec::RadialBump { radius, smoothness } => {
            let m = *smoothness as i32;
            let cut = radius / pf.max(qf);
            let rsq = radius * radius;
            let profile = |s: f64| {
                let a = 1.0 - pf * pf * s * s / rsq;
                let b = 1.0 - qf * qf * s * s / rsq;
                a.powi(m) * b.powi(m) * s.powi(dim as i32 - 1)
            };
            Ok(sphere_surface_area(dim) * adaptive_simpson(&profile, 0.0, cut, 1e-13))
        }
        TestFunctionSpec::DomainIndicator(_) => Err(Error::UnsupportedConfiguration(
            "product-domain indicators have a dedicated limiting variance series; \
             use variance_series instead of the generic pair integrals"
                .into(),
        )),
    }
}

/// The truncated formula and its tail bound; separated out so tests can
/// probe truncation behavior without Monte Carlo.
pub(crate) fn rogers_formula(
    f: &TestFunctionSpec,
    dim: usize,
    truncation: u64,
) -> Result<(f64, f64)> {
    if dim < 3 {
        return Err(Error::UnsupportedDimension { d: dim, min: 3 });
    }
    if truncation < 1 {
        return Err(Error::InvalidParameter("truncation P must be >= 1".into()));
    }
    let mut pairs = 0.0;
    for p in 1..=truncation {
        for q in 1..=truncation {
            pairs += pair_integral(f, dim, p, q, false)? + pair_integral(f, dim, p, q, true)?;
        }
    }
    let (z_lo, z_hi) = zeta_enclosure(dim, ZETA_CUTOFF);
    // |int f(pz) g(qz)| <= ||f||_inf ||f||_1 / max(p,q)^d with ||f||_inf = 1
    // for every kind here; (2m-1) pairs share max(p,q) = m, so the omitted
    // pairs sum to at most 4 ||f||_1 P^{2-d}/(d-2).
    let s = dim as f64;
    let tail = 4.0 * f.integral(dim)? * (truncation as f64).powf(2.0 - s) / (s - 2.0) / z_lo;
    Ok((pairs / (0.5 * (z_lo + z_hi)), tail))
}

pub fn rogers_check(
    f: &TestFunctionSpec,
    cfg: &SamplerConfig,
    n: usize,
    truncation: u64,
) -> Result<RogersReport> {
    if n < 4 {
        return Err(Error::InsufficientSamples { need: 4, got: n });
    }
    let (formula, tail_bound) = rogers_formula(f, cfg.dim, truncation)?;
    let values: Vec<f64> = (0..n as u64)
        .into_par_iter()
        .map(|i| siegel_transform(f, &cfg.sample(i)?))
        .collect::<Result<_>>()?;
    let m = mean(&values);
    let variance = values.iter().map(|v| (v - m).powi(2)).sum::<f64>() / (n as f64 - 1.0);
    let second_moment = values.iter().map(|v| v * v).sum::<f64>() / n as f64;
    // ||f-hat||^2 <= ||f||_1^2 + 2 zeta(d/2)^2/zeta(d) ||f||_2^2
    let l1 = f.integral(cfg.dim)?;
    let l2sq = match f {
        TestFunctionSpec::BallIndicator { .. } | TestFunctionSpec::BoxIndicator(_) => l1,
        TestFunctionSpec::RadialBump { radius, smoothness } => TestFunctionSpec::RadialBump {
            radius: *radius,
            smoothness: 2 * smoothness,
        }
        .integral(cfg.dim)?,
        TestFunctionSpec::DomainIndicator(_) => l1,
    };
    let (z_lo, z_hi) = zeta_enclosure(cfg.dim, ZETA_CUTOFF);
    let l2_bound = l1 * l1
        + 2.0 * zeta_real(cfg.dim as f64 / 2.0).powi(2) / (0.5 * (z_lo + z_hi)) * l2sq;
    Ok(RogersReport {
        n,
        truncation,
        empirical_mean: m,
        empirical_variance: variance,
        formula,
        tail_bound,
        relative_gap: (variance - formula).abs() / formula,
        second_moment,
        l2_bound,
    })
}

/// One Monte Carlo sample of a discrepancy experiment; the row schema of
/// the CSV output.
#[derive(Debug, Clone, Serialize)]
pub struct SampleRecord {
    pub sample_index: u64,
    pub raw_count: u64,
    pub volume: f64,
    pub discrepancy: f64,
    pub normalized: f64,
    pub boundary_flags: u64,
    pub alpha_proxy: f64,
}

/// Moments, cumulants, and the KS distance of a sample, each with a
/// batch-means standard error. Undefined entries (n too small for the
/// statistic) are NaN.
#[derive(Debug, Clone, Serialize)]
pub struct SampleSummary {
    pub n: usize,
    pub mean: f64,
    pub variance: f64,
    pub cum3: f64,
    pub cum4: f64,
    pub ks_distance: f64,
    pub target_sigma2: f64,
    pub se_mean: f64,
    pub se_variance: f64,
    pub se_cum3: f64,
    pub se_cum4: f64,
}

/// Summarize normalized discrepancies against the normal(0, target_sigma2)
/// reference law.
pub fn summarize(samples: &[f64], target_sigma2: f64) -> Result<SampleSummary> {
    let n = samples.len();
    if n == 0 {
        return Err(Error::InsufficientSamples { need: 1, got: 0 });
    }
    // validate sigma2 before the KS closure can hit it
    normal_cdf(0.0, target_sigma2)?;
    let stat = |r: usize| move |s: &[f64]| cumulant(s, r).unwrap_or(f64::NAN);
    let ks = ks_statistic(samples, |x| {
        normal_cdf(x, target_sigma2).expect("validated variance")
    })?;
    Ok(SampleSummary {
        n,
        mean: mean(samples),
        variance: cumulant(samples, 2).unwrap_or(f64::NAN),
        cum3: cumulant(samples, 3).unwrap_or(f64::NAN),
        cum4: cumulant(samples, 4).unwrap_or(f64::NAN),
        ks_distance: ks,
        target_sigma2,
        se_mean: batch_se(samples, mean),
        se_variance: batch_se(samples, stat(2)),
        se_cum3: batch_se(samples, stat(3)),
        se_cum4: batch_se(samples, stat(4)),
    })
}

/// n independent discrepancy samples of the spec, in index order.
pub fn clt_samples(
    spec: &DomainSpec,
    cfg: &SamplerConfig,
    n: usize,
    cell_side: f64,
) -> Result<Vec<SampleRecord>> {
    if cfg.dim != spec.partition().d() {
        return Err(Error::DimensionMismatch {
            expected: spec.partition().d(),
            got: cfg.dim,
        });
    }
    (0..n as u64)
        .into_par_iter()
        .map(|i| {
            let lat = cfg.sample(i)?;
            let r = count_tiled(&lat, spec, cell_side)?;
            Ok(SampleRecord {
                sample_index: i,
                raw_count: r.count,
                volume: r.volume,
                discrepancy: r.discrepancy,
                normalized: r.normalized,
                boundary_flags: r.boundary_flags,
                alpha_proxy: alpha_proxy(&lat)?,
            })
        })
        .collect()
}

/// The per-cutoff result of a distribution experiment.
#[derive(Debug, Clone, Serialize)]
pub struct CltReport {
    pub t: f64,
    pub summary: SampleSummary,
    #[serde(skip)]
    pub records: Vec<SampleRecord>,
}

/// Run the discrepancy experiment for each spec (a family over T), with
/// the limiting variance series as the reference sigma^2.
pub fn clt_experiment(
    specs: &[DomainSpec],
    cfg: &SamplerConfig,
    n: usize,
    cell_side: f64,
    truncation: u64,
) -> Result<Vec<CltReport>> {
    specs
        .iter()
        .map(|spec| {
            let records = clt_samples(spec, cfg, n, cell_side)?;
            let normalized: Vec<f64> = records.iter().map(|r| r.normalized).collect();
            let target =
                variance_series(spec.interval(), spec.region(), spec.partition(), truncation)?
                    .value;
            Ok(CltReport {
                t: spec.t(),
                summary: summarize(&normalized, target)?,
                records,
            })
        })
        .collect()
}
