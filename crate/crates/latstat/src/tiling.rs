//! The exact tessellation behind fast counting: in the scaled coordinates
//! x = tau_T(s)^{-1}(u - v_T), the u-section of the domain is the simplex
//! shell S(N) = { x < 0, sum x > -N }, N = floor(log T), and S(N) splits —
//! disjointly, up to measure zero — into integer translates of two model
//! tiles:
//!
//!   S_1 = S(1),        S_2 = [-1,0)^{k-1} \ S(1) = { -1 <= x_j < 0, sum x <= -1 }.
//!
//! The translate sets are P_{N,1} = { n >= 0 : sum n <= N-1 } and
//! P_{N,2} = { n >= 0 : sum n <= N-2 }: solving the subset conditions
//! S_i - n ⊂ S(N) with the measure-zero boundary faces of S_2 resolved in
//! favor of exact coverage (only the corner (-1,..,-1) of S_2 ever
//! protrudes, and only for the maximal translates). For k - 1 >= 3 no
//! translate set satisfies both the subset rule and coverage, so
//! construction is refused there; the cell-based counter does not use it.

use crate::domain::{coord_forward, DomainSpec, Interval};
use crate::error::{Error, Result};
use crate::lattice::DiagonalFlow;
use crate::partition::DimensionPartition;

/// Tessellation data for one domain spec: translate sets, the anchor
/// translation v_T, and the scale maps.
#[derive(Debug, Clone)]
pub struct TilingSpec {
    n: u64,
    translates1: Vec<Vec<i64>>,
    translates2: Vec<Vec<i64>>,
    v_t: Vec<f64>,
    partition: DimensionPartition,
    interval: Interval,
    log_t: f64,
}

/// x in S(N): all coordinates negative, sum above -N.
pub fn in_shell(x: &[f64], n: u64) -> bool {
    x.iter().all(|&v| v < 0.0) && x.iter().sum::<f64>() > -(n as f64)
}

/// x in the open model tile S_1 = S(1).
pub fn in_tile1(x: &[f64]) -> bool {
    in_shell(x, 1)
}

/// x in the complementary tile S_2 (empty when k = 1; the single point {-1}
/// when k = 2).
pub fn in_tile2(x: &[f64]) -> bool {
    x.iter().all(|&v| (-1.0..0.0).contains(&v)) && x.iter().sum::<f64>() <= -1.0
}

fn translates(dim: usize, max_coord: i64, max_sum: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut cur = vec![0i64; dim];
    fn rec(level: usize, cur: &mut Vec<i64>, max_coord: i64, budget: i64, out: &mut Vec<Vec<i64>>) {
        if budget < 0 {
            return;
        }
        if level == cur.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..=max_coord.min(budget) {
            cur[level] = v;
            rec(level + 1, cur, max_coord, budget - v, out);
        }
        cur[level] = 0;
    }
    rec(0, &mut cur, max_coord, max_sum, &mut out);
    out
}

/// Build the tessellation for a spec. Errors: T at or below the threshold
/// sup(I)^{1/d}, log T < 1, or more than 3 blocks (see module docs).
pub fn tiling_build(spec: &DomainSpec) -> Result<TilingSpec> {
    spec.require_tiling_threshold()?;
    let partition = spec.partition().clone();
    let k = partition.k();
    if k > 3 {
        return Err(Error::UnsupportedConfiguration(format!(
            "tessellation translate sets exist only for k <= 3 blocks (got k = {k}): \
             beyond that no integer translate set makes the S_2 tiles both subsets of \
             S(N) and an exact cover; the cell-based counter handles such partitions"
        )));
    }
    let log_t = spec.log_t();
    let n = log_t.floor() as u64;
    let translates1 = translates(k - 1, n as i64, n as i64 - 1);
    let translates2 = if k == 1 {
        Vec::new()
    } else {
        translates(k - 1, n as i64, n as i64 - 2)
    };
    Ok(TilingSpec {
        n,
        translates1,
        translates2,
        v_t: vec![log_t; k - 1],
        partition,
        interval: *spec.interval(),
        log_t,
    })
}

impl TilingSpec {
    /// N = floor(log T).
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn translates1(&self) -> &[Vec<i64>] {
        &self.translates1
    }

    pub fn translates2(&self) -> &[Vec<i64>] {
        &self.translates2
    }

    /// (log T, ..., log T) in R^{k-1}.
    pub fn v_t(&self) -> &[f64] {
        &self.v_t
    }

    /// Diagonal of the full dilation delta_T(s): (d log T - s)/d_j. The
    /// u-section of the domain at weighted log-norm s is
    /// delta_T(s) S_1 + v_T.
    pub fn delta(&self, s: f64) -> Vec<f64> {
        let d = self.partition.d() as f64;
        self.partition
            .dims()
            .iter()
            .take(self.partition.k() - 1)
            .map(|&dj| (d * self.log_t - s) / dj as f64)
            .collect()
    }

    /// Diagonal of tau_T(s) = delta_T(s)/N, the per-tile scale: the same
    /// section equals tau_T(s) S(N) + v_T.
    pub fn tau(&self, s: f64) -> Vec<f64> {
        let nn = self.n as f64;
        self.delta(s).into_iter().map(|v| v / nn).collect()
    }

    /// The T-independent limit diag(d/d_j) of tau_T(s).
    pub fn tau_infinity(&self) -> Vec<f64> {
        let d = self.partition.d() as f64;
        self.partition
            .dims()
            .iter()
            .take(self.partition.k() - 1)
            .map(|&dj| d / dj as f64)
            .collect()
    }

    /// beta_T(n, s) = tau_T(s) n - v_T: the flow displacement that carries
    /// the translate-n tile back to the model tile at the origin.
    pub fn beta(&self, n: &[i64], s: f64) -> Vec<f64> {
        let tau = self.tau(s);
        n.iter()
            .zip(&tau)
            .zip(&self.v_t)
            .map(|((&nj, tj), vj)| tj * nj as f64 - vj)
            .collect()
    }

    /// beta-tilde_T(n) = tau_infinity n - v_T, the s-free anchor of the same
    /// displacement; ||beta - beta_tilde||_inf is bounded uniformly in T.
    pub fn beta_tilde(&self, n: &[i64]) -> Vec<f64> {
        let ti = self.tau_infinity();
        n.iter()
            .zip(&ti)
            .zip(&self.v_t)
            .map(|((&nj, tj), vj)| tj * nj as f64 - vj)
            .collect()
    }
}

/// Both sides of the counting identity at a single point: the domain
/// indicator, and the sum of tile indicators evaluated on flowed copies
/// a(beta_T(n, s(z))) z. They agree for every z at least 1e-9 away from all
/// tile boundaries in (u, s, xi); use [`boundary_clearance`] to check that.
pub fn tiling_identity_eval(z: &[f64], spec: &DomainSpec) -> Result<(u32, u32)> {
    let tiling = tiling_build(spec)?;
    Ok(tiling_identity_eval_with(z, spec, &tiling))
}

/// As [`tiling_identity_eval`], reusing a prebuilt tessellation.
pub fn tiling_identity_eval_with(z: &[f64], spec: &DomainSpec, tiling: &TilingSpec) -> (u32, u32) {
    let lhs = spec.contains(z) as u32;
    let Ok(c) = coord_forward(z, spec.partition()) else {
        // a zero block is in no tile and not in the domain
        return (lhs, 0);
    };
    let mut rhs = 0u32;
    for (which, set) in [(1u8, &tiling.translates1), (2, &tiling.translates2)] {
        for n in set {
            let beta = tiling.beta(n, c.s);
            let flow = DiagonalFlow::new(beta, spec.partition().clone())
                .expect("translate length is k-1 by construction");
            let zf = flow.apply_point(z);
            let Ok(cf) = coord_forward(&zf, spec.partition()) else {
                continue;
            };
            if !(cf.s > tiling.interval.log_lo() && cf.s < tiling.interval.log_hi()) {
                continue;
            }
            let tau = tiling.tau(cf.s);
            let x: Vec<f64> = cf.u.iter().zip(&tau).map(|(u, t)| u / t).collect();
            let in_tile = if which == 1 { in_tile1(&x) } else { in_tile2(&x) };
            if !in_tile {
                continue;
            }
            let xi_refs: Vec<&[f64]> = cf.xi.iter().map(|v| v.as_slice()).collect();
            if spec.region().contains_xi(&xi_refs) {
                rhs += 1;
            }
        }
    }
    (lhs, rhs)
}

/// A conservative lower bound on how far z sits from every surface where
/// either side of the identity could flip: domain boundaries, plus the
/// interior tile faces (integer hyperplanes in the x-coordinates). Points
/// with small clearance are excluded from identity testing, per the 1e-9
/// boundary tolerance.
pub fn boundary_clearance(z: &[f64], spec: &DomainSpec, tiling: &TilingSpec) -> f64 {
    let Ok(c) = coord_forward(z, spec.partition()) else {
        return 0.0;
    };
    let mut clear = spec.boundary_proximity(z);
    let d = spec.partition().d() as f64;
    if c.s >= d * tiling.log_t {
        // some norm is at or beyond T; the domain-boundary distance already
        // accounts for that and no tile reaches this far
        return clear;
    }
    let tau = tiling.tau(c.s);
    let mut sum_x = 0.0;
    for (u, t) in c.u.iter().zip(&tau) {
        let x = (u - tiling.log_t) / t;
        clear = clear.min((x - x.round()).abs());
        sum_x += x;
    }
    if !c.u.is_empty() {
        clear = clear.min((sum_x - sum_x.round()).abs());
    }
    clear
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::region::AngularRegion;
    use approx::assert_relative_eq;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn part(dims: &[usize]) -> DimensionPartition {
        DimensionPartition::new(dims.to_vec()).unwrap()
    }

    fn spec_with(dims: &[usize], lo: f64, hi: f64, log_t: f64) -> DomainSpec {
        let p = part(dims);
        DomainSpec::new(
            p.clone(),
            Interval::new(lo, hi).unwrap(),
            AngularRegion::full(&p),
            log_t.exp(),
        )
        .unwrap()
    }

    #[test]
    fn translate_sets_k2_n5() {
        // 1-D: S_1 - n = (-1-n, -n) needs n <= N-1; S_2 = {-1} needs
        // -1-n > -N, i.e. n <= N-2
        let t = tiling_build(&spec_with(&[1, 1], 0.5, 1.5, 5.5)).unwrap();
        assert_eq!(t.n(), 5);
        let p1: Vec<i64> = t.translates1().iter().map(|v| v[0]).collect();
        let p2: Vec<i64> = t.translates2().iter().map(|v| v[0]).collect();
        assert_eq!(p1, vec![0, 1, 2, 3, 4]);
        assert_eq!(p2, vec![0, 1, 2, 3]);
    }

    /// k=3: subset of the closed shell is a vertex condition on the closed
    /// tiles (convexity), and for two dimensions that is exactly the
    /// coverage rule, so the vertex oracle pins both translate sets.
    #[test]
    fn translate_sets_k3_vertex_oracle() {
        let s1_vertices = [[0.0, 0.0], [-1.0, 0.0], [0.0, -1.0]];
        let s2_vertices = [[-1.0, 0.0], [0.0, -1.0], [-1.0, -1.0]];
        let ok = |vs: &[[f64; 2]], n: &[i64], big_n: f64| {
            vs.iter().all(|v| {
                let x = [v[0] - n[0] as f64, v[1] - n[1] as f64];
                x[0] <= 0.0 && x[1] <= 0.0 && x[0] + x[1] >= -big_n
            })
        };
        for log_t in [2.5, 4.25, 7.1] {
            let t = tiling_build(&spec_with(&[1, 1, 1], 1.0, 2.0, log_t)).unwrap();
            let nn = t.n() as i64;
            let mut oracle1 = Vec::new();
            let mut oracle2 = Vec::new();
            for a in 0..=nn {
                for b in 0..=nn {
                    if ok(&s1_vertices, &[a, b], nn as f64) {
                        oracle1.push(vec![a, b]);
                    }
                    if ok(&s2_vertices, &[a, b], nn as f64) {
                        oracle2.push(vec![a, b]);
                    }
                }
            }
            let mut got1 = t.translates1().to_vec();
            let mut got2 = t.translates2().to_vec();
            got1.sort();
            got2.sort();
            oracle1.sort();
            oracle2.sort();
            assert_eq!(got1, oracle1, "P_{{N,1}} at N={nn}");
            assert_eq!(got2, oracle2, "P_{{N,2}} at N={nn}");
        }
        // the spec'd small case: N=2 gives three S_1 translates and one S_2
        let t = tiling_build(&spec_with(&[1, 1, 1], 1.0, 2.0, 2.5)).unwrap();
        assert_eq!(t.translates1().len(), 3);
        assert_eq!(t.translates2(), [vec![0, 0]]);
    }

    #[test]
    fn translate_counts_match_shell_volume() {
        // |P_1| Vol(S_1) + |P_2| Vol(S_2) = Vol(S(N)), i.e. in integers
        // |P_1| + |P_2| ((k-1)! - 1) = N^{k-1}
        for (dims, log_t) in [
            (&[1usize, 1] as &[usize], 3.2),
            (&[1, 1], 9.9),
            (&[2, 1], 6.01),
            (&[1, 1, 1], 3.5),
            (&[2, 2, 1], 8.25),
            (&[3, 1, 2], 12.75),
        ] {
            let s = spec_with(dims, 1.0, 2.0, log_t);
            let t = tiling_build(&s).unwrap();
            let k1 = s.partition().k() - 1;
            let factorial: u64 = (1..=k1 as u64).product();
            let lhs = t.translates1().len() as u64
                + t.translates2().len() as u64 * (factorial - 1);
            assert_eq!(lhs, t.n().pow(k1 as u32), "at {dims:?}, N={}", t.n());
            for set in [t.translates1(), t.translates2()] {
                assert!(set.len() as u64 <= (t.n() + 1).pow(k1 as u32));
            }
        }
    }

    #[test]
    fn sampled_points_land_in_exactly_one_tile() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for (dims, log_t) in [
            (&[1usize, 1] as &[usize], 4.7),
            (&[2, 1], 7.3),
            (&[1, 1, 1], 5.2),
            (&[2, 2, 1], 9.8),
        ] {
            let s = spec_with(dims, 1.0, 2.0, log_t);
            let t = tiling_build(&s).unwrap();
            let k1 = s.partition().k() - 1;
            let nn = t.n();
            let mut accepted = 0;
            while accepted < 20_000 {
                let x: Vec<f64> = (0..k1)
                    .map(|_| rng.random_range(-(nn as f64)..0.0))
                    .collect();
                if !in_shell(&x, nn) {
                    continue;
                }
                accepted += 1;
                let mut hits = 0;
                for n in t.translates1() {
                    let shifted: Vec<f64> =
                        x.iter().zip(n).map(|(v, &m)| v + m as f64).collect();
                    hits += in_tile1(&shifted) as u32;
                }
                for n in t.translates2() {
                    let shifted: Vec<f64> =
                        x.iter().zip(n).map(|(v, &m)| v + m as f64).collect();
                    hits += in_tile2(&shifted) as u32;
                }
                assert_eq!(hits, 1, "x = {x:?} at {dims:?}, N={nn}");
            }
        }
    }

    #[test]
    fn tile2_at_k2_is_the_single_point() {
        assert!(in_tile2(&[-1.0]));
        assert!(!in_tile2(&[-0.999]));
        assert!(!in_tile2(&[-1.001]));
        // and k=1: no tile-2 at all, S_1 is everything
        assert!(in_tile1(&[]));
        assert!(!in_tile2(&[]));
    }

    #[test]
    fn scale_map_relations() {
        let s = spec_with(&[3, 2, 1], 1.0, 4.0, 8.6);
        let t = tiling_build(&s).unwrap();
        let at = 0.7;
        let tau = t.tau(at);
        let delta = t.delta(at);
        for (tj, dj) in tau.iter().zip(&delta) {
            assert_relative_eq!(tj * t.n() as f64, dj, epsilon = 1e-12);
            assert!(*tj > 0.0);
        }
        assert_relative_eq!(delta[0], (6.0 * 8.6 - at) / 3.0, epsilon = 1e-12);
        // tau tends to diag(d/d_j) as T grows
        let far = tiling_build(&spec_with(&[3, 2, 1], 1.0, 4.0, 30.0)).unwrap();
        for (tj, ti) in far.tau(at).iter().zip(far.tau_infinity()) {
            assert!((tj - ti).abs() < 0.25, "tau {tj} vs limit {ti}");
        }
        assert_eq!(t.tau_infinity(), vec![2.0, 3.0]);
    }

    #[test]
    fn beta_stays_near_its_anchor_uniformly_in_t() {
        // || beta(n,s) - beta_tilde(n) ||_inf <= (d + sup|log I|)/min_{j<k} d_j
        let dims: &[usize] = &[3, 2, 1];
        let (lo, hi) = (0.5, 7.0);
        let c3 = (6.0 + (lo as f64).ln().abs().max((hi as f64).ln().abs())) / 2.0;
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for log_t in [3.0, 6.0, 9.0, 12.0, 15.0] {
            let s = spec_with(dims, lo, hi, log_t);
            let t = tiling_build(&s).unwrap();
            for n in t.translates1().iter().chain(t.translates2()) {
                for _ in 0..20 {
                    let sv = rng.random_range(lo.ln()..hi.ln());
                    let b = t.beta(n, sv);
                    let bt = t.beta_tilde(n);
                    let gap = b
                        .iter()
                        .zip(&bt)
                        .map(|(a, c)| (a - c).abs())
                        .fold(0.0f64, f64::max);
                    assert!(gap <= c3, "gap {gap} > c3 {c3} at T=e^{log_t}, n={n:?}");
                }
            }
        }
    }

    #[test]
    fn build_rejections() {
        // below the tiling threshold
        let p = part(&[1, 1]);
        let low = DomainSpec::new(
            p.clone(),
            Interval::new(1.0, 2.0).unwrap(),
            AngularRegion::full(&p),
            2.0, // log T < 1
        )
        .unwrap();
        assert!(matches!(
            tiling_build(&low),
            Err(Error::BelowThreshold { .. })
        ));
        // four blocks
        let s4 = spec_with(&[1, 1, 1, 1], 1.0, 2.0, 5.0);
        assert!(matches!(
            tiling_build(&s4),
            Err(Error::UnsupportedConfiguration(_))
        ));
    }

    #[test]
    fn identity_hand_examples() {
        let s = spec_with(&[1, 1], 0.5, 1.5, 3.0);
        // strictly inside: N(z) = 1.1, norms well below T = e^3
        assert_eq!(tiling_identity_eval(&[1.0, 1.1], &s).unwrap(), (1, 1));
        // outside: N(z) = 4
        assert_eq!(tiling_identity_eval(&[2.0, 2.0], &s).unwrap(), (0, 0));
        // zero block
        assert_eq!(tiling_identity_eval(&[0.0, 1.0], &s).unwrap(), (0, 0));
        // norm beyond T but product back inside: still outside
        let big = 25.0; // e^3 ~ 20.1
        assert_eq!(
            tiling_identity_eval(&[big, 1.0 / big], &s).unwrap(),
            (0, 0)
        );
    }

    /// Random clearance-filtered points, mixed inside/outside, on specs with
    /// one and two free u-coordinates (plus the degenerate k=1 case).
    #[test]
    fn identity_on_sampled_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for (dims, lo, hi, log_t) in [
            (&[1usize, 1] as &[usize], 0.5, 1.5, 3.4),
            (&[2, 1], 1.0, 6.0, 4.6),
            (&[1, 1, 1], 0.7, 2.5, 3.9),
            (&[2usize] as &[usize], 1.0, 4.0, 2.2),
        ] {
            let s = spec_with(dims, lo, hi, log_t);
            let t = tiling_build(&s).unwrap();
            let p = s.partition().clone();
            let k = p.k();
            let mut inside = 0u32;
            let mut tested = 0u32;
            while tested < 10_000 {
                // sample in (u, s, xi): u around [0, log T], s around log I
                let u: Vec<f64> = (0..k - 1)
                    .map(|_| rng.random_range(-1.0..log_t + 0.5))
                    .collect();
                let sv = rng.random_range(lo.ln() - 0.4..hi.ln() + 0.4);
                let xi: Vec<Vec<f64>> = p
                    .dims()
                    .iter()
                    .map(|&dj| loop {
                        let v: Vec<f64> = (0..dj).map(|_| rng.random_range(-1.0..1.0)).collect();
                        let nrm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                        if nrm > 0.2 {
                            break v.iter().map(|x| x / nrm).collect();
                        }
                    })
                    .collect();
                let z = crate::domain::coord_inverse(
                    &crate::domain::CoordPoint { u, s: sv, xi },
                    &p,
                );
                if boundary_clearance(&z, &s, &t) < 1e-6 {
                    continue;
                }
                tested += 1;
                let (lhs, rhs) = tiling_identity_eval_with(&z, &s, &t);
                assert_eq!(lhs, rhs, "z = {z:?} on {dims:?}");
                inside += lhs;
            }
            assert!(
                inside > 200 && inside < 9_800,
                "want a real inside/outside mix, got {inside}/10000 at {dims:?}"
            );
        }
    }
}
