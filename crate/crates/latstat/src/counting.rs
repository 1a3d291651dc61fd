//! Counting lattice points in the product-norm domains, two ways.
//!
//! The brute-force counter enumerates a bounding ellipsoid of [-T, T]^d and
//! filters by membership — the oracle, usable while the candidate estimate
//! stays under a cap. The accelerated counter covers the u-projection of the
//! domain (the log norms of the first k-1 blocks) with cubic cells of side h;
//! for a cell centered at u_c, the diagonal flow a(-u_c) maps the cell's
//! slice of the domain into one fixed compact box, so each cell costs an
//! enumeration of O(1) points no matter how large T is. Membership and cell
//! ownership are always evaluated on the point reconstructed through the
//! canonical basis path, which makes the two counters agree bit for bit.

use serde::Serialize;

use crate::domain::DomainSpec;
use crate::enumerate::{enumerate_ellipsoid, BoxConstraint};
use crate::error::{Error, Result};
use crate::lattice::{DiagonalFlow, LatticeBasis};
use crate::lll::{lll_reduce_with_transform, DEFAULT_DELTA};
use crate::region::sphere_surface_area;
use crate::volume::domain_volume;

/// Default ceiling on the brute-force candidate estimate (2T)^d / |det|.
pub const BRUTE_FORCE_CAP: f64 = 1e8;

/// Default cell side for the accelerated counter.
pub const DEFAULT_CELL_SIDE: f64 = 1.0;

/// Points closer than this to a domain boundary are tallied in
/// `boundary_flags` (they are still counted per the strict inequalities).
pub const BOUNDARY_FLAG_PROXIMITY: f64 = 1e-12;

/// One count with its derived discrepancy statistics and the work counters
/// used by the scaling checks.
#[derive(Debug, Clone, Serialize)]
pub struct CountResult {
    pub count: u64,
    pub volume: f64,
    /// count - volume, exactly.
    pub discrepancy: f64,
    /// discrepancy / sqrt(volume); NaN when the volume is not positive.
    pub normalized: f64,
    pub boundary_flags: u64,
    pub cells_visited: u64,
    pub candidates_enumerated: u64,
}

impl CountResult {
    pub fn assemble(
        count: u64,
        volume: f64,
        boundary_flags: u64,
        cells_visited: u64,
        candidates_enumerated: u64,
    ) -> Self {
        let discrepancy = count as f64 - volume;
        let normalized = if volume > 0.0 {
            discrepancy / volume.sqrt()
        } else {
            f64::NAN
        };
        CountResult {
            count,
            volume,
            discrepancy,
            normalized,
            boundary_flags,
            cells_visited,
            candidates_enumerated,
        }
    }
}

/// Which counter backs a discrepancy evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CountMethod {
    BruteForce,
    Tiled { cell_side: f64 },
}

/// |L ∩ Ω| by direct enumeration of the bounding ellipsoid of [-T, T]^d.
pub fn count_bruteforce(basis: &LatticeBasis, spec: &DomainSpec) -> Result<CountResult> {
    let d = spec.partition().d();
    if basis.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: basis.dim(),
        });
    }
    let volume = domain_volume(spec)?;
    let t = spec.t();
    let estimate = (2.0 * t).powi(d as i32) / basis.det_abs();
    if estimate > BRUTE_FORCE_CAP {
        return Err(Error::CandidateCapExceeded {
            estimate,
            cap: BRUTE_FORCE_CAP,
        });
    }
    let weights = vec![1.0 / (t * t); d];
    let center = vec![0.0; d];
    let mut count = 0u64;
    let mut flags = 0u64;
    // every member has all |coords| < T, hence sum z_i^2 < d T^2
    let candidates = enumerate_ellipsoid(basis, &weights, &center, d as f64, &mut |_, z| {
        if spec.contains(z) {
            count += 1;
            if spec.boundary_proximity(z) < BOUNDARY_FLAG_PROXIMITY {
                flags += 1;
            }
        }
    })?;
    Ok(CountResult::assemble(count, volume, flags, 1, candidates))
}

/// |L ∩ Ω| by the cell decomposition: equals [`count_bruteforce`] exactly.
///
/// The u-projection of the domain lies in the product of
/// [(log inf I - (d - d_j) log T)/d_j, log T); it is covered by cubes of
/// side `cell_side`. Each cell is flowed to the origin and the flowed
/// lattice is enumerated inside the fixed box
/// K = { ||z_j|| <= e^{h/2} (j<k), ||z_k|| <= e^{(log sup I + (d-d_k)h/2)/d_k} },
/// which contains the flowed image of the cell's domain slice. A candidate
/// is counted by the cell that owns its u-coordinates, so overlaps between
/// neighboring cells' boxes never double-count.
pub fn count_tiled(basis: &LatticeBasis, spec: &DomainSpec, cell_side: f64) -> Result<CountResult> {
    let partition = spec.partition();
    let d = partition.d();
    let k = partition.k();
    let dims = partition.dims();
    if basis.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: basis.dim(),
        });
    }
    spec.require_tiling_threshold()?;
    if !(cell_side > 0.0 && cell_side.is_finite()) {
        return Err(Error::InvalidParameter(format!(
            "cell side must be a positive real, got {cell_side}"
        )));
    }
    let volume = domain_volume(spec)?;
    let h = cell_side;
    let log_t = spec.log_t();
    let (log_lo, log_hi) = (spec.interval().log_lo(), spec.interval().log_hi());
    let d_k = dims[k - 1] as f64;

    // grid origin and cell count per u-axis
    let mut grid_lo = Vec::with_capacity(k - 1);
    let mut grid_n = Vec::with_capacity(k - 1);
    for &dj in &dims[..k - 1] {
        let lo_j = (log_lo - (d - dj) as f64 * log_t) / dj as f64;
        grid_lo.push(lo_j);
        grid_n.push(((log_t - lo_j) / h).ceil() as usize);
    }

    // per-block radii of the fixed enumeration box K, by coordinate
    let mut block_rsq = vec![(0.5 * h).exp().powi(2); k];
    block_rsq[k - 1] = ((log_hi + (d as f64 - d_k) * 0.5 * h) / d_k).exp().powi(2);
    let mut weights = vec![0.0; d];
    for (j, &rsq) in block_rsq.iter().enumerate() {
        for i in partition.block_range(j) {
            weights[i] = 1.0 / rsq;
        }
    }
    let center = vec![0.0; d];
    // loose pre-filter thresholds; canonical membership decides survivors
    let box_lim: Vec<f64> = block_rsq.iter().map(|r| r * (1.0 + 1e-6)).collect();
    let nsq_lo = spec.interval().lo().powi(2) * (1.0 - 1e-6);
    let nsq_hi = spec.interval().hi().powi(2) * (1.0 + 1e-6);

    let mut count = 0u64;
    let mut flags = 0u64;
    let mut cells_visited = 0u64;
    let mut candidates = 0u64;
    let mut m_orig = vec![0i64; d];
    let mut zbuf = vec![0.0; d];

    let mut cell = vec![0usize; k - 1];
    loop {
        // feasibility: the cell must meet { sum_j d_j u_j > log lo - d_k log T }
        let corner_sum: f64 = cell
            .iter()
            .zip(&grid_lo)
            .zip(&dims[..k - 1])
            .map(|((&a, &lo_j), &dj)| dj as f64 * (lo_j + (a + 1) as f64 * h))
            .sum();
        if corner_sum > log_lo - d_k * log_t - 1e-9 {
            cells_visited += 1;
            let u_c: Vec<f64> = cell
                .iter()
                .zip(&grid_lo)
                .map(|(&a, &lo_j)| lo_j + (a as f64 + 0.5) * h)
                .collect();
            let flow_back = DiagonalFlow::new(u_c.clone(), partition.clone())?;
            let scales = flow_back.scale_factors();
            let flowed = flow_back.inverse().apply_basis(basis)?;
            let (reduced, u_mat) = lll_reduce_with_transform(&flowed, DEFAULT_DELTA)?;
            let t_lim: Vec<f64> = scales
                .iter()
                .map(|s| (spec.t() / s).powi(2) * (1.0 + 1e-6))
                .collect();
            candidates += enumerate_ellipsoid(
                &reduced,
                &weights,
                &center,
                k as f64,
                &mut |m, zp| {
                    // stage 1: cheap rejection in the flowed frame
                    let mut nsq_prod = 1.0;
                    for j in 0..k {
                        let mut nsq = 0.0;
                        for zi in &zp[partition.block_range(j)] {
                            nsq += zi * zi;
                        }
                        if nsq > box_lim[j] || nsq >= t_lim[j] {
                            return;
                        }
                        nsq_prod *= nsq.powi(dims[j] as i32);
                    }
                    if !(nsq_prod > nsq_lo && nsq_prod < nsq_hi) {
                        return;
                    }
                    // stage 2: canonical reconstruction and exact membership
                    for (jj, mo) in m_orig.iter_mut().enumerate() {
                        *mo = m.iter().zip(&u_mat).map(|(&mi, ur)| mi * ur[jj]).sum();
                    }
                    basis.point_into(&m_orig, &mut zbuf);
                    if !spec.contains(&zbuf) {
                        return;
                    }
                    // ownership: exactly one cell counts each member; the
                    // index is clamped so members pinned to the grid edge by
                    // rounding still have exactly one owner
                    for (j, (&lo_j, &a)) in grid_lo.iter().zip(&cell).enumerate() {
                        let uj = {
                            let mut nsq = 0.0;
                            for zi in &zbuf[partition.block_range(j)] {
                                nsq += zi * zi;
                            }
                            0.5 * nsq.ln()
                        };
                        let idx = (((uj - lo_j) / h).floor() as i64)
                            .clamp(0, grid_n[j] as i64 - 1);
                        if idx != a as i64 {
                            return;
                        }
                    }
                    count += 1;
                    if spec.boundary_proximity(&zbuf) < BOUNDARY_FLAG_PROXIMITY {
                        flags += 1;
                    }
                },
            )?;
        }
        // odometer over the cell grid; k = 1 has the single empty cell
        let mut axis = 0;
        loop {
            if axis == cell.len() {
                return Ok(CountResult::assemble(
                    count,
                    volume,
                    flags,
                    cells_visited,
                    candidates,
                ));
            }
            cell[axis] += 1;
            if cell[axis] < grid_n[axis] {
                break;
            }
            cell[axis] = 0;
            axis += 1;
        }
    }
}

/// A bounded, compactly supported, nonnegative test function for Siegel
/// transforms and the mean-value/variance checks.
#[derive(Debug, Clone)]
pub enum TestFunctionSpec {
    /// Indicator of the closed ball of this radius.
    BallIndicator { radius: f64 },
    /// Indicator of a closed axis-aligned box.
    BoxIndicator(BoxConstraint),
    /// Indicator of a counting domain (strict inequalities).
    DomainIndicator(DomainSpec),
    /// (1 - |z|^2/r^2)^m on the ball of radius r; m >= 1 gives continuity.
    RadialBump { radius: f64, smoothness: u32 },
}

impl TestFunctionSpec {
    fn validate_radius(radius: f64) -> Result<()> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "radius must be a positive real, got {radius}"
            )));
        }
        Ok(())
    }

    /// Smallest axis-aligned box containing the support.
    pub fn support_box(&self, dim: usize) -> Result<BoxConstraint> {
        match self {
            TestFunctionSpec::BallIndicator { radius }
            | TestFunctionSpec::RadialBump { radius, .. } => {
                Self::validate_radius(*radius)?;
                Ok(BoxConstraint::centered_cube(dim, *radius))
            }
            TestFunctionSpec::BoxIndicator(bx) => {
                if bx.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: bx.dim(),
                    });
                }
                Ok(bx.clone())
            }
            TestFunctionSpec::DomainIndicator(spec) => {
                if spec.partition().d() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: spec.partition().d(),
                    });
                }
                Ok(BoxConstraint::centered_cube(dim, spec.t()))
            }
        }
    }

    pub fn eval(&self, z: &[f64]) -> f64 {
        match self {
            TestFunctionSpec::BallIndicator { radius } => {
                let nsq: f64 = z.iter().map(|x| x * x).sum();
                if nsq <= radius * radius {
                    1.0
                } else {
                    0.0
                }
            }
            TestFunctionSpec::BoxIndicator(bx) => {
                let inside = z
                    .iter()
                    .zip(bx.lo().iter().zip(bx.hi()))
                    .all(|(x, (lo, hi))| *x >= *lo && *x <= *hi);
                if inside {
                    1.0
                } else {
                    0.0
                }
            }
            TestFunctionSpec::DomainIndicator(spec) => {
                if spec.contains(z) {
                    1.0
                } else {
                    0.0
                }
            }
            TestFunctionSpec::RadialBump { radius, smoothness } => {
                let x: f64 = z.iter().map(|x| x * x).sum::<f64>() / (radius * radius);
                if x >= 1.0 {
                    0.0
                } else {
                    (1.0 - x).powi(*smoothness as i32)
                }
            }
        }
    }

    /// The Lebesgue integral over R^dim, in closed form.
    pub fn integral(&self, dim: usize) -> Result<f64> {
        match self {
            TestFunctionSpec::BallIndicator { radius } => {
                Self::validate_radius(*radius)?;
                Ok(ball_volume(dim) * radius.powi(dim as i32))
            }
            TestFunctionSpec::BoxIndicator(bx) => {
                if bx.dim() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: bx.dim(),
                    });
                }
                Ok(bx
                    .lo()
                    .iter()
                    .zip(bx.hi())
                    .map(|(lo, hi)| hi - lo)
                    .product())
            }
            TestFunctionSpec::DomainIndicator(spec) => {
                if spec.partition().d() != dim {
                    return Err(Error::DimensionMismatch {
                        expected: dim,
                        got: spec.partition().d(),
                    });
                }
                domain_volume(spec)
            }
            TestFunctionSpec::RadialBump { radius, smoothness } => {
                Self::validate_radius(*radius)?;
                // A_{d-1} r^d int_0^1 (1-t^2)^m t^{d-1} dt
                //   = A_{d-1} r^d m! / (2 prod_{j=0..m} (d/2 + j))
                let mut beta = 1.0;
                for j in 0..=*smoothness {
                    beta *= (j.max(1)) as f64 / (dim as f64 / 2.0 + j as f64);
                }
                Ok(sphere_surface_area(dim) * radius.powi(dim as i32) * beta / 2.0)
            }
        }
    }
}

/// Volume of the unit ball in R^d.
pub fn ball_volume(d: usize) -> f64 {
    sphere_surface_area(d) / d as f64
}

/// The Siegel transform: sum of f over the nonzero points of the lattice.
pub fn siegel_transform(f: &TestFunctionSpec, basis: &LatticeBasis) -> Result<f64> {
    let d = basis.dim();
    let support = f.support_box(d)?;
    let mut center = Vec::with_capacity(d);
    let mut weights = Vec::with_capacity(d);
    for (lo, hi) in support.lo().iter().zip(support.hi()) {
        center.push(0.5 * (lo + hi));
        let half = 0.5 * (hi - lo);
        weights.push(1.0 / half.max(1e-12).powi(2));
    }
    let mut sum = 0.0;
    enumerate_ellipsoid(basis, &weights, &center, d as f64, &mut |m, z| {
        if m.iter().all(|&c| c == 0) {
            return;
        }
        sum += f.eval(z);
    })?;
    Ok(sum)
}

/// Count with the chosen method and package the discrepancy statistics.
pub fn discrepancy(
    basis: &LatticeBasis,
    spec: &DomainSpec,
    method: CountMethod,
) -> Result<CountResult> {
    match method {
        CountMethod::BruteForce => count_bruteforce(basis, spec),
        CountMethod::Tiled { cell_side } => count_tiled(basis, spec, cell_side),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Interval;
    use crate::lll::lll_reduce;
    use crate::partition::DimensionPartition;
    use crate::region::{AngularRegion, RegionFactor};
    use crate::sample::{hecke_sample, sample_rng};
    use approx::assert_relative_eq;
    use rand::Rng;

    fn plane_spec(lo: f64, hi: f64, t: f64, plus_only: bool) -> DomainSpec {
        let partition = DimensionPartition::new(vec![1, 1]).unwrap();
        let factor = RegionFactor::SignSet {
            plus: true,
            minus: !plus_only,
        };
        let region = AngularRegion::new(&partition, vec![factor.clone(), factor]).unwrap();
        DomainSpec::new(
            partition,
            Interval::new(lo, hi).unwrap(),
            region,
            t,
        )
        .unwrap()
    }

    #[test]
    fn integer_plane_hand_counts() {
        let z2 = LatticeBasis::identity(2);
        // products |mn| in (0.5, 1.5) with 0 < |m|,|n| < 10: only |m|=|n|=1
        let quadrant = plane_spec(0.5, 1.5, 10.0, true);
        let all_signs = plane_spec(0.5, 1.5, 10.0, false);
        let empty = plane_spec(0.4, 0.6, 10.0, false);
        for (spec, expect) in [(&quadrant, 1), (&all_signs, 4), (&empty, 0)] {
            let brute = count_bruteforce(&z2, spec).unwrap();
            let tiled = count_tiled(&z2, spec, DEFAULT_CELL_SIDE).unwrap();
            assert_eq!(brute.count, expect);
            assert_eq!(tiled.count, expect, "tiled count for {expect}");
            assert_eq!(brute.boundary_flags, tiled.boundary_flags);
        }
    }

    #[test]
    fn discrepancy_fields_are_consistent() {
        let z2 = LatticeBasis::identity(2);
        let spec = plane_spec(0.5, 1.5, 10.0, true);
        let r = discrepancy(&z2, &spec, CountMethod::BruteForce).unwrap();
        assert_eq!(r.count, 1);
        assert_relative_eq!(r.discrepancy, 1.0 - r.volume);
        assert_relative_eq!(r.normalized, r.discrepancy / r.volume.sqrt());
        let degenerate = CountResult::assemble(3, 0.0, 0, 1, 10);
        assert!(degenerate.normalized.is_nan());
        assert_eq!(degenerate.discrepancy, 3.0);
    }

    #[test]
    fn tiled_agrees_with_bruteforce_on_random_lattices() {
        let t = 3.0f64.exp();
        let p21 = DimensionPartition::new(vec![2, 1]).unwrap();
        let spec3 = DomainSpec::new(
            p21.clone(),
            Interval::new(1.0, 7.0).unwrap(),
            AngularRegion::full(&p21),
            t,
        )
        .unwrap();
        for i in 0..12 {
            let mut rng = sample_rng(600, i);
            let lat = hecke_sample(3, 101, &mut rng).unwrap();
            let b = count_bruteforce(&lat, &spec3).unwrap();
            let c = count_tiled(&lat, &spec3, DEFAULT_CELL_SIDE).unwrap();
            assert_eq!(b.count, c.count, "lattice {i}");
            assert_eq!(b.boundary_flags, c.boundary_flags, "lattice {i}");
        }
        // half-side region and a finer cell grid at d = 4
        let p22 = DimensionPartition::new(vec![2, 2]).unwrap();
        let spec4 = DomainSpec::new(
            p22.clone(),
            Interval::new(1.0, 4.0).unwrap(),
            AngularRegion::new(
                &p22,
                vec![
                    RegionFactor::Hemisphere {
                        axis: vec![1.0, 0.0],
                    },
                    RegionFactor::FullSphere,
                ],
            )
            .unwrap(),
            t,
        )
        .unwrap();
        for i in 0..4 {
            let mut rng = sample_rng(601, i);
            let lat = hecke_sample(4, 101, &mut rng).unwrap();
            let b = count_bruteforce(&lat, &spec4).unwrap();
            for h in [1.0, 0.7] {
                let c = count_tiled(&lat, &spec4, h).unwrap();
                assert_eq!(b.count, c.count, "lattice {i}, cell side {h}");
            }
        }
    }

    #[test]
    fn counts_survive_lll_rebasing() {
        let t = 3.0f64.exp();
        let p21 = DimensionPartition::new(vec![2, 1]).unwrap();
        let spec = DomainSpec::new(
            p21.clone(),
            Interval::new(1.0, 5.0).unwrap(),
            AngularRegion::full(&p21),
            t,
        )
        .unwrap();
        for i in 0..3 {
            let mut rng = sample_rng(77, i);
            // skew a sampled basis with an integer shear, then re-reduce
            let lat = hecke_sample(3, 101, &mut rng).unwrap();
            let mut rows = lat.rows().to_vec();
            for c in 0..3 {
                rows[0][c] += 3.0 * rows[1][c] - 2.0 * rows[2][c];
            }
            let skewed = LatticeBasis::new(rows).unwrap();
            let reduced = lll_reduce(&skewed, DEFAULT_DELTA).unwrap();
            let a = count_bruteforce(&skewed, &spec).unwrap();
            let b = count_bruteforce(&reduced, &spec).unwrap();
            let c = count_tiled(&reduced, &spec, DEFAULT_CELL_SIDE).unwrap();
            assert_eq!(a.count, b.count, "lattice {i}");
            assert_eq!(b.count, c.count, "lattice {i}");
        }
    }

    #[test]
    fn siegel_transform_examples() {
        let z2 = LatticeBasis::identity(2);
        let f = TestFunctionSpec::BallIndicator { radius: 1.5 };
        assert_relative_eq!(siegel_transform(&f, &z2).unwrap(), 8.0);
        let g = TestFunctionSpec::BallIndicator { radius: 0.5 };
        assert_relative_eq!(siegel_transform(&g, &z2).unwrap(), 0.0);
        let spec = plane_spec(0.5, 1.5, 10.0, false);
        let h = TestFunctionSpec::DomainIndicator(spec.clone());
        assert_relative_eq!(
            siegel_transform(&h, &z2).unwrap(),
            count_bruteforce(&z2, &spec).unwrap().count as f64
        );
    }

    #[test]
    fn test_function_integrals() {
        // unit ball areas: pi in 2d, 4pi/3 in 3d
        let pi = std::f64::consts::PI;
        assert_relative_eq!(
            TestFunctionSpec::BallIndicator { radius: 1.0 }
                .integral(2)
                .unwrap(),
            pi,
            epsilon = 1e-12
        );
        assert_relative_eq!(
            TestFunctionSpec::BallIndicator { radius: 2.0 }
                .integral(3)
                .unwrap(),
            4.0 / 3.0 * pi * 8.0,
            epsilon = 1e-12
        );
        let bx = BoxConstraint::new(vec![-1.0, 0.0], vec![1.0, 3.0]).unwrap();
        assert_relative_eq!(
            TestFunctionSpec::BoxIndicator(bx).integral(2).unwrap(),
            6.0
        );
        // (1 - |z|^2)^1 on the unit disc: 2pi int_0^1 (1-t^2) t dt = pi/2
        assert_relative_eq!(
            TestFunctionSpec::RadialBump {
                radius: 1.0,
                smoothness: 1
            }
            .integral(2)
            .unwrap(),
            pi / 2.0,
            epsilon = 1e-12
        );
        // quadrature cross-check of the bump in 3 dimensions
        let m = 2;
        let oracle = crate::quad::adaptive_simpson(
            &|s: f64| 4.0 * pi * s * s * (1.0 - s * s).powi(m),
            0.0,
            1.0,
            1e-12,
        );
        assert_relative_eq!(
            TestFunctionSpec::RadialBump {
                radius: 1.0,
                smoothness: m as u32
            }
            .integral(3)
            .unwrap(),
            oracle,
            epsilon = 1e-9
        );
    }

    /// The transform is invariant under the flow substitution: summing
    /// f over a(u)L equals summing z -> f(a(u)z) over L.
    #[test]
    fn flow_substitution_identity() {
        let partition = DimensionPartition::new(vec![2, 1]).unwrap();
        for i in 0..5 {
            let mut rng = sample_rng(505, i);
            let lat = hecke_sample(3, 101, &mut rng).unwrap();
            let u = vec![rng.random_range(-0.8..0.8)];
            let flow = DiagonalFlow::new(u, partition.clone()).unwrap();
            let scales = flow.coordinate_scales();
            let bx = BoxConstraint::new(vec![-1.3, -0.9, -2.0], vec![0.8, 1.7, 1.1]).unwrap();
            let lhs = siegel_transform(
                &TestFunctionSpec::BoxIndicator(bx.clone()),
                &flow.apply_basis(&lat).unwrap(),
            )
            .unwrap();
            // z in a(-u) box  <=>  a(u) z in box
            let pulled = BoxConstraint::new(
                bx.lo().iter().zip(&scales).map(|(l, s)| l / s).collect(),
                bx.hi().iter().zip(&scales).map(|(h, s)| h / s).collect(),
            )
            .unwrap();
            let rhs =
                siegel_transform(&TestFunctionSpec::BoxIndicator(pulled), &lat).unwrap();
            assert_relative_eq!(lhs, rhs, epsilon = 1e-12);
        }
    }

    /// Work per unit volume stays bounded as T grows: the whole point of
    /// the cell decomposition.
    #[test]
    fn enumeration_work_scales_with_volume() {
        let p21 = DimensionPartition::new(vec![2, 1]).unwrap();
        let mut rng = sample_rng(909, 0);
        let lat = hecke_sample(3, 101, &mut rng).unwrap();
        let mut per_volume = Vec::new();
        for log_t in [5.0f64, 10.0, 15.0] {
            let spec = DomainSpec::new(
                p21.clone(),
                Interval::new(1.0, 2.0).unwrap(),
                AngularRegion::full(&p21),
                log_t.exp(),
            )
            .unwrap();
            let r = count_tiled(&lat, &spec, DEFAULT_CELL_SIDE).unwrap();
            per_volume.push(r.candidates_enumerated as f64 / r.volume);
        }
        let max = per_volume.iter().cloned().fold(f64::MIN, f64::max);
        let min = per_volume.iter().cloned().fold(f64::MAX, f64::min);
        assert!(
            max / min < 3.0,
            "candidates per unit volume drift with T: {per_volume:?}"
        );
    }

    #[test]
    fn bruteforce_cap_points_to_tiled() {
        let lat = LatticeBasis::identity(3);
        let p21 = DimensionPartition::new(vec![2, 1]).unwrap();
        let spec = DomainSpec::new(
            p21.clone(),
            Interval::new(1.0, 2.0).unwrap(),
            AngularRegion::full(&p21),
            15.0f64.exp(),
        )
        .unwrap();
        let err = count_bruteforce(&lat, &spec).unwrap_err();
        assert!(matches!(err, Error::CandidateCapExceeded { .. }));
        assert!(err.to_string().contains("count_tiled"));
    }
}
