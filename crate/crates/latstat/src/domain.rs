//! The counting domains: products of block norms in an interval, directions
//! in an angular region, every block norm positive and below the cutoff T —
//! plus the (u, s, xi) coordinates in which the diagonal flow acts by
//! translation.

use crate::error::{Error, Result};
use crate::matrix;
use crate::partition::DimensionPartition;
use crate::region::AngularRegion;

/// Open interval (lo, hi) with 0 < lo < hi < infinity; the target range for
/// the norm product N(z).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo > 0.0 && hi > lo && hi.is_finite()) {
            return Err(Error::InvalidInterval(format!(
                "need 0 < lo < hi < inf, got ({lo}, {hi})"
            )));
        }
        Ok(Self { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    /// Lebesgue length hi - lo.
    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn log_lo(&self) -> f64 {
        self.lo.ln()
    }

    pub fn log_hi(&self) -> f64 {
        self.hi.ln()
    }

    /// Strict membership in the open interval.
    pub fn contains(&self, x: f64) -> bool {
        x > self.lo && x < self.hi
    }

    /// The scaled interval (f*lo, f*hi), f > 0.
    pub fn scaled(&self, f: f64) -> Self {
        debug_assert!(f > 0.0);
        Self {
            lo: f * self.lo,
            hi: f * self.hi,
        }
    }

    /// Length of the overlap with another open interval.
    pub fn intersection_length(&self, other: &Interval) -> f64 {
        (self.hi.min(other.hi) - self.lo.max(other.lo)).max(0.0)
    }
}

/// Full description of a counting domain: partition, norm-product interval,
/// angular region, and cutoff T.
#[derive(Debug, Clone)]
pub struct DomainSpec {
    partition: DimensionPartition,
    interval: Interval,
    region: AngularRegion,
    t: f64,
}

impl DomainSpec {
    pub fn new(
        partition: DimensionPartition,
        interval: Interval,
        region: AngularRegion,
        t: f64,
    ) -> Result<Self> {
        if !(t > 1.0 && t.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "cutoff T must be a finite real > 1, got {t}"
            )));
        }
        // Re-validate the region against this partition (factor count, axis
        // dimensions); AngularRegion construction already checks when built
        // with the same partition, but specs can be assembled from parts.
        let region = AngularRegion::new(&partition, region.factors().to_vec())?;
        Ok(Self {
            partition,
            interval,
            region,
            t,
        })
    }

    pub fn partition(&self) -> &DimensionPartition {
        &self.partition
    }

    pub fn interval(&self) -> &Interval {
        &self.interval
    }

    pub fn region(&self) -> &AngularRegion {
        &self.region
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn log_t(&self) -> f64 {
        self.t.ln()
    }

    /// Validity threshold sup(I)^(1/d): above it every simplex dilation
    /// factor delta_{T,j}(s) = (d log T - s)/d_j is positive on all of log I,
    /// which is exactly what the closed-form volume and the tiling require.
    pub fn threshold(&self) -> f64 {
        self.interval.hi.powf(1.0 / self.partition.d() as f64)
    }

    /// Error unless T exceeds the volume-formula threshold.
    pub fn require_volume_threshold(&self) -> Result<()> {
        let th = self.threshold();
        if self.t <= th {
            return Err(Error::BelowThreshold {
                t: self.t,
                threshold: th,
                extra: "",
            });
        }
        Ok(())
    }

    /// Error unless T exceeds the tiling threshold (volume threshold plus
    /// N = floor(log T) >= 1).
    pub fn require_tiling_threshold(&self) -> Result<()> {
        self.require_volume_threshold()?;
        if self.log_t() < 1.0 {
            return Err(Error::BelowThreshold {
                t: self.t,
                threshold: std::f64::consts::E.max(self.threshold()),
                extra: " and e (so that N = floor(log T) >= 1)",
            });
        }
        Ok(())
    }

    /// Strict membership of z: N(z) in (lo, hi), xi(z) in B, and
    /// 0 < ||z_j|| < T for every block. Zero blocks return false.
    pub fn contains(&self, z: &[f64]) -> bool {
        let norms = self.partition.block_norms(z);
        let mut log_n = 0.0;
        for (&nj, &dj) in norms.iter().zip(self.partition.dims()) {
            if !(nj > 0.0 && nj < self.t) {
                return false;
            }
            log_n += dj as f64 * nj.ln();
        }
        // The product is compared on the log scale: immune to overflow at
        // large d, and used consistently by every counter in the crate.
        if !(log_n > self.interval.log_lo() && log_n < self.interval.log_hi()) {
            return false;
        }
        let blocks = self.partition.blocks(z);
        let mut xi_store: Vec<Vec<f64>> = Vec::with_capacity(blocks.len());
        for (b, &nj) in blocks.iter().zip(&norms) {
            xi_store.push(b.iter().map(|x| x / nj).collect());
        }
        let xi_refs: Vec<&[f64]> = xi_store.iter().map(|v| v.as_slice()).collect();
        self.region.contains_xi(&xi_refs)
    }

    /// Smallest of the (scale-adjusted) distances from z to the domain's
    /// defining boundaries: the interval endpoints (relative on the
    /// log-product scale), the norm cutoffs ||z_j|| = T (relative), the zero
    /// blocks, and the angular-factor boundaries. Used to flag points whose
    /// in/out status is numerically fragile.
    pub fn boundary_proximity(&self, z: &[f64]) -> f64 {
        let norms = self.partition.block_norms(z);
        let mut prox = f64::INFINITY;
        let mut log_n = 0.0;
        for (&nj, &dj) in norms.iter().zip(self.partition.dims()) {
            if nj == 0.0 {
                return 0.0;
            }
            prox = prox.min((nj - self.t).abs() / self.t).min(nj / self.t);
            log_n += dj as f64 * nj.ln();
        }
        prox = prox
            .min((log_n - self.interval.log_lo()).abs())
            .min((log_n - self.interval.log_hi()).abs());
        let blocks = self.partition.blocks(z);
        for ((factor, b), &nj) in self
            .region
            .factors()
            .iter()
            .zip(&blocks)
            .zip(&norms)
        {
            use crate::region::RegionFactor::*;
            match factor {
                FullSphere => {}
                Hemisphere { axis } => {
                    let c = matrix::dot(b, axis) / nj;
                    prox = prox.min(c.abs());
                }
                Cap { axis, angle } => {
                    let c = matrix::dot(b, axis) / nj;
                    prox = prox.min((c - angle.cos()).abs());
                }
                SignSet { .. } => {
                    // boundary of a sign set is the origin of the block,
                    // already covered by the zero-norm distance above
                }
            }
        }
        prox
    }
}

/// A point in the (u, s, xi) coordinates: u the first k-1 block log-norms,
/// s the weighted total log-norm, xi the tuple of unit block directions.
#[derive(Debug, Clone, PartialEq)]
pub struct CoordPoint {
    pub u: Vec<f64>,
    pub s: f64,
    pub xi: Vec<Vec<f64>>,
}

/// Forward coordinates: u_j = log||z_j|| (j < k), s = sum_j d_j log||z_j||,
/// xi_j = z_j/||z_j||.
pub fn coord_forward(z: &[f64], partition: &DimensionPartition) -> Result<CoordPoint> {
    let blocks = partition.blocks(z);
    let mut u = Vec::with_capacity(partition.k() - 1);
    let mut s = 0.0;
    let mut xi = Vec::with_capacity(partition.k());
    for (j, (b, &dj)) in blocks.iter().zip(partition.dims()).enumerate() {
        let nj = matrix::norm(b);
        if nj == 0.0 {
            return Err(Error::ZeroBlock { block: j });
        }
        let lognj = nj.ln();
        if j + 1 < partition.k() {
            u.push(lognj);
        }
        s += dj as f64 * lognj;
        xi.push(b.iter().map(|x| x / nj).collect());
    }
    Ok(CoordPoint { u, s, xi })
}

/// Inverse coordinates: block j < k is e^{u_j} xi_j; block k is
/// e^{(s - sum d_j u_j)/d_k} xi_k.
pub fn coord_inverse(p: &CoordPoint, partition: &DimensionPartition) -> Vec<f64> {
    let k = partition.k();
    assert_eq!(p.u.len(), k - 1, "u must have k-1 entries");
    assert_eq!(p.xi.len(), k, "xi must have k blocks");
    let dims = partition.dims();
    let mut z = Vec::with_capacity(partition.d());
    let mut weighted = 0.0;
    for j in 0..k - 1 {
        weighted += dims[j] as f64 * p.u[j];
    }
    for j in 0..k {
        let r = if j + 1 < k {
            p.u[j].exp()
        } else {
            ((p.s - weighted) / dims[k - 1] as f64).exp()
        };
        z.extend(p.xi[j].iter().map(|x| r * x));
    }
    z
}

/// Result of normalizing an invertible linear map to determinant +-1:
/// counting lattice points of L(Lambda)-type domains reduces to the standard
/// domain with rescaled parameters.
#[derive(Debug, Clone)]
pub struct ReducedForms {
    /// Scalar c = sgn(det L) |det L|^{1/d}.
    pub c: f64,
    /// L0 = L / c. det L0 = +1, except d even with det L < 0 where no real
    /// scalar can fix the sign and det L0 = -1 (still fine for counting).
    pub l0: Vec<Vec<f64>>,
    /// The interval for the standard domain: |c|^{-d} I = |det L|^{-1} I.
    pub interval: Interval,
    /// The region for the standard domain: sgn(c) B.
    pub region: AngularRegion,
    /// Cutoff rescaling: the standard domain uses T' = t_scale * T with
    /// t_scale = |c|^{-1} = |det L|^{-1/d}.
    pub t_scale: f64,
}

/// Split an invertible L as c*L0 and return the standard-domain parameters:
/// a point satisfies the L-form constraints with data (I, B, T) iff its
/// L0-image satisfies the standard constraints with (|c|^{-d} I, sgn(c) B,
/// |c|^{-1} T). Verified against brute-force counting (see tests).
pub fn reduce_linear_forms(
    l: &[Vec<f64>],
    interval: &Interval,
    region: &AngularRegion,
) -> Result<ReducedForms> {
    let d = l.len();
    if d == 0 || l.iter().any(|row| row.len() != d) {
        return Err(Error::InvalidParameter("L must be square".into()));
    }
    let det = matrix::det(l);
    if det == 0.0 || !det.is_finite() {
        return Err(Error::SingularMatrix);
    }
    let c = det.signum() * det.abs().powf(1.0 / d as f64);
    let l0 = l
        .iter()
        .map(|row| row.iter().map(|x| x / c).collect())
        .collect();
    let scale = 1.0 / det.abs(); // |c|^{-d}
    Ok(ReducedForms {
        c,
        l0,
        interval: interval.scaled(scale),
        region: if c < 0.0 {
            region.reflected()
        } else {
            region.clone()
        },
        t_scale: 1.0 / c.abs(),
    })
}
