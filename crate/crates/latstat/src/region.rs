//! Angular regions B on the product of unit spheres, and their measures.
//!
//! Each block j carries the unit sphere S^{d_j - 1} with its standard surface
//! measure kappa_j; a 1-dimensional block carries the two-point sphere S^0
//! with counting measure (mass 1 per point). The region B is a product of
//! per-block factors, so kappa(B) and kappa(B ∩ -B) both factor.

use crate::error::{Error, Result};
use crate::matrix::dot;
use crate::partition::DimensionPartition;
use crate::quad::adaptive_simpson;

/// Accuracy target for the cap-intersection quadrature.
const CAP_QUAD_TOL: f64 = 1e-10;

/// One per-block factor of an angular region.
#[derive(Debug, Clone, PartialEq)]
pub enum RegionFactor {
    /// The whole sphere S^{d_j - 1}.
    FullSphere,
    /// Open hemisphere { xi : <xi, axis> > 0 } (blocks of dimension >= 2).
    Hemisphere { axis: Vec<f64> },
    /// Open spherical cap { xi : <xi, axis> > cos(angle) }, angle in (0, pi)
    /// (blocks of dimension >= 2).
    Cap { axis: Vec<f64>, angle: f64 },
    /// Subset of S^0 = {-1, +1} for 1-dimensional blocks.
    SignSet { plus: bool, minus: bool },
}

/// A product region B = B_1 x ... x B_k on the product of block spheres.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularRegion {
    factors: Vec<RegionFactor>,
}

/// Surface area of the unit sphere S^{n-1} in R^n: 2 pi^{n/2} / Gamma(n/2).
/// n = 1 gives 2, the counting measure of S^0.
pub fn sphere_surface_area(n: usize) -> f64 {
    assert!(n >= 1);
    2.0 * std::f64::consts::PI.powf(n as f64 / 2.0) / gamma_half(n)
}

/// Gamma(n/2) for positive integer n, by the exact factorial / double
/// factorial recurrences (no general special-function code needed).
fn gamma_half(n: usize) -> f64 {
    if n % 2 == 0 {
        // Gamma(m) = (m-1)!
        let m = n / 2;
        let mut g = 1.0;
        for i in 1..m {
            g *= i as f64;
        }
        g
    } else {
        // Gamma(m + 1/2) = sqrt(pi) * prod_{i=1..m} (i - 1/2)
        let m = n / 2;
        let mut g = std::f64::consts::PI.sqrt();
        for i in 1..=m {
            g *= i as f64 - 0.5;
        }
        g
    }
}

/// int_0^theta sin^m(t) dt by the stable downward recurrence
/// I_m = ((m-1) I_{m-2} - sin^{m-1}(theta) cos(theta)) / m.
fn sin_power_integral(m: usize, theta: f64) -> f64 {
    let (s, c) = (theta.sin(), theta.cos());
    let mut i_prev = theta; // I_0
    if m == 0 {
        return i_prev;
    }
    let mut i_cur = 1.0 - c; // I_1
    for mm in 2..=m {
        let next = ((mm as f64 - 1.0) * i_prev - s.powi(mm as i32 - 1) * c) / mm as f64;
        i_prev = i_cur;
        i_cur = next;
    }
    i_cur
}

/// Surface measure of the cap { <xi, axis> > cos(theta) } on S^{n-1}, n >= 2:
/// area(S^{n-2}) * int_0^theta sin^{n-2}.
fn cap_measure(n: usize, theta: f64) -> f64 {
    debug_assert!(n >= 2);
    sphere_surface_area(n - 1) * sin_power_integral(n - 2, theta)
}

impl RegionFactor {
    fn validate(&self, dj: usize) -> Result<()> {
        match self {
            RegionFactor::FullSphere => Ok(()),
            RegionFactor::Hemisphere { axis } | RegionFactor::Cap { axis, .. } => {
                if dj < 2 {
                    return Err(Error::InvalidRegion(
                        "hemisphere/cap factors need block dimension >= 2; use SignSet".into(),
                    ));
                }
                if axis.len() != dj {
                    return Err(Error::DimensionMismatch {
                        expected: dj,
                        got: axis.len(),
                    });
                }
                let n = crate::matrix::norm(axis);
                if (n - 1.0).abs() > 1e-9 {
                    return Err(Error::InvalidRegion(format!(
                        "axis must be a unit vector (norm {n})"
                    )));
                }
                if let RegionFactor::Cap { angle, .. } = self {
                    if !(*angle > 0.0 && *angle < std::f64::consts::PI) {
                        return Err(Error::InvalidRegion(format!(
                            "cap angle must lie in (0, pi), got {angle}"
                        )));
                    }
                }
                Ok(())
            }
            RegionFactor::SignSet { plus, minus } => {
                if dj != 1 {
                    return Err(Error::InvalidRegion(
                        "SignSet factors only on 1-dimensional blocks".into(),
                    ));
                }
                if !plus && !minus {
                    return Err(Error::InvalidRegion("empty sign set".into()));
                }
                Ok(())
            }
        }
    }

    fn measure(&self, dj: usize) -> f64 {
        match self {
            RegionFactor::FullSphere => sphere_surface_area(dj),
            RegionFactor::Hemisphere { .. } => sphere_surface_area(dj) / 2.0,
            RegionFactor::Cap { angle, .. } => cap_measure(dj, *angle),
            RegionFactor::SignSet { plus, minus } => {
                (*plus as u32 + *minus as u32) as f64
            }
        }
    }

    /// Measure of B_j ∩ -B_j.
    fn symmetric_overlap(&self, dj: usize) -> f64 {
        match self {
            RegionFactor::FullSphere => sphere_surface_area(dj),
            // A hemisphere meets its reflection only on the equator: measure 0.
            RegionFactor::Hemisphere { .. } => 0.0,
            RegionFactor::Cap { angle, .. } => {
                // C(v,t) ∩ C(-v,t) is the rotationally symmetric band
                // pi - t <= polar angle <= t, empty unless t > pi/2.
                if *angle <= std::f64::consts::FRAC_PI_2 {
                    0.0
                } else {
                    let lo = std::f64::consts::PI - angle;
                    let m = dj - 2;
                    sphere_surface_area(dj - 1)
                        * adaptive_simpson(&|t: f64| t.sin().powi(m as i32), lo, *angle, CAP_QUAD_TOL)
                }
            }
            RegionFactor::SignSet { plus, minus } => {
                if *plus && *minus {
                    2.0
                } else {
                    0.0
                }
            }
        }
    }

    fn contains(&self, xi: &[f64]) -> bool {
        match self {
            RegionFactor::FullSphere => true,
            RegionFactor::Hemisphere { axis } => dot(xi, axis) > 0.0,
            RegionFactor::Cap { axis, angle } => dot(xi, axis) > angle.cos(),
            RegionFactor::SignSet { plus, minus } => {
                if xi[0] > 0.0 {
                    *plus
                } else {
                    *minus
                }
            }
        }
    }

    fn reflected(&self) -> Self {
        match self {
            RegionFactor::FullSphere => RegionFactor::FullSphere,
            RegionFactor::Hemisphere { axis } => RegionFactor::Hemisphere {
                axis: axis.iter().map(|x| -x).collect(),
            },
            RegionFactor::Cap { axis, angle } => RegionFactor::Cap {
                axis: axis.iter().map(|x| -x).collect(),
                angle: *angle,
            },
            RegionFactor::SignSet { plus, minus } => RegionFactor::SignSet {
                plus: *minus,
                minus: *plus,
            },
        }
    }
}

impl AngularRegion {
    /// Validate factors against the partition (count, axis dimensions, unit
    /// norms, SignSet placement).
    pub fn new(partition: &DimensionPartition, factors: Vec<RegionFactor>) -> Result<Self> {
        if factors.len() != partition.k() {
            return Err(Error::InvalidRegion(format!(
                "region has {} factors but the partition has {} blocks",
                factors.len(),
                partition.k()
            )));
        }
        for (f, &dj) in factors.iter().zip(partition.dims()) {
            f.validate(dj)?;
        }
        Ok(Self { factors })
    }

    /// The full product of spheres (kappa(B) maximal).
    pub fn full(partition: &DimensionPartition) -> Self {
        Self {
            factors: partition
                .dims()
                .iter()
                .map(|&dj| {
                    if dj == 1 {
                        RegionFactor::SignSet {
                            plus: true,
                            minus: true,
                        }
                    } else {
                        RegionFactor::FullSphere
                    }
                })
                .collect(),
        }
    }

    pub fn factors(&self) -> &[RegionFactor] {
        &self.factors
    }

    /// kappa(B): product of the per-factor surface measures.
    pub fn measure(&self, partition: &DimensionPartition) -> f64 {
        self.factors
            .iter()
            .zip(partition.dims())
            .map(|(f, &dj)| f.measure(dj))
            .product()
    }

    /// kappa(B ∩ -B): the region is a product, so the overlap factors too.
    pub fn symmetric_overlap(&self, partition: &DimensionPartition) -> f64 {
        self.factors
            .iter()
            .zip(partition.dims())
            .map(|(f, &dj)| f.symmetric_overlap(dj))
            .product()
    }

    /// Membership of a tuple of unit block directions (strict inequalities;
    /// the boundaries have measure zero).
    pub fn contains_xi(&self, xi_blocks: &[&[f64]]) -> bool {
        debug_assert_eq!(xi_blocks.len(), self.factors.len());
        self.factors
            .iter()
            .zip(xi_blocks)
            .all(|(f, xi)| f.contains(xi))
    }

    /// The reflected region -B (factor-wise).
    pub fn reflected(&self) -> Self {
        Self {
            factors: self.factors.iter().map(|f| f.reflected()).collect(),
        }
    }
}
