//! Random unimodular lattices: Hecke prime-index sublattices of Z^d as the
//! general-dimension sampler (equidistributing toward the invariant measure
//! as the prime grows), and an exact rejection sampler in d = 2 used to
//! calibrate it. RNG streams are derived from (master seed, sample index),
//! so results never depend on thread count.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::lattice::LatticeBasis;
use crate::lll::{lll_reduce, DEFAULT_DELTA};

/// The generator for one Monte Carlo sample: same master seed, one ChaCha
/// stream per sample index.
pub fn sample_rng(master_seed: u64, sample_index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
    rng.set_stream(sample_index);
    rng
}

/// Deterministic trial-division primality (the primes used here are small).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut f = 5u64;
    while f * f <= n {
        if n % f == 0 || n % (f + 2) == 0 {
            return false;
        }
        f += 6;
    }
    true
}

/// A uniformly random index-p sublattice of Z^d containing pZ^d, rescaled
/// to determinant 1 and LLL-reduced. The sublattice is the kernel of
/// x -> a.x mod p for a uniform nonzero a in F_p^d, which is uniform over
/// the (p^d - 1)/(p - 1) possible sublattices.
pub fn hecke_sample<R: Rng + ?Sized>(d: usize, p: u64, rng: &mut R) -> Result<LatticeBasis> {
    if d < 2 {
        return Err(Error::UnsupportedDimension { d, min: 2 });
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let a: Vec<u64> = loop {
        let a: Vec<u64> = (0..d).map(|_| rng.random_range(0..p)).collect();
        if a.iter().any(|&x| x != 0) {
            break a;
        }
    };
    let pivot = a.iter().position(|&x| x != 0).unwrap();
    let inv = mod_inverse(a[pivot], p);
    // integer rows: p e_pivot, and e_i - (a_i / a_pivot mod p) e_pivot
    let scale = (p as f64).powf(-1.0 / d as f64);
    let mut rows = vec![vec![0.0; d]; d];
    for i in 0..d {
        if i == pivot {
            rows[i][pivot] = p as f64 * scale;
        } else {
            rows[i][i] = scale;
            rows[i][pivot] = -((a[i] * inv % p) as f64) * scale;
        }
    }
    lll_reduce(&LatticeBasis::new(rows)?, DEFAULT_DELTA)
}

/// a^{-1} mod p for prime p, 0 < a < p (Fermat).
fn mod_inverse(a: u64, p: u64) -> u64 {
    let mut result = 1u128;
    let mut base = a as u128 % p as u128;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u128;
        }
        base = base * base % p as u128;
        e >>= 1;
    }
    result as u64
}

/// Exact invariant-measure sampler for unimodular planar lattices, with the
/// number of rejection rounds it took (the acceptance rate is
/// pi*sqrt(3)/6 ~ 0.907; callers aggregate the attempt counts into logs).
///
/// A point z = x + iy of the modular fundamental domain is drawn by
/// rejection from the strip { |x| <= 1/2, y >= sqrt(3)/2 } under the
/// hyperbolic measure dx dy / y^2, the lattice Z + zZ is rescaled to
/// covolume 1, and a uniform rotation is applied.
pub fn exact_sample_d2_with_attempts<R: Rng + ?Sized>(rng: &mut R) -> (LatticeBasis, u32) {
    let y0 = 3.0f64.sqrt() / 2.0;
    let mut attempts = 0u32;
    let (x, y) = loop {
        attempts += 1;
        let x = rng.random_range(-0.5..0.5);
        // y ~ y0/U has density y0/y^2 on [y0, inf)
        let y = y0 / (1.0 - rng.random::<f64>());
        if x * x + y * y >= 1.0 {
            break (x, y);
        }
    };
    let theta = rng.random_range(0.0..std::f64::consts::TAU);
    let (sin, cos) = theta.sin_cos();
    let sy = y.sqrt();
    let raw = [[1.0 / sy, 0.0], [x / sy, sy]];
    let rows = raw
        .iter()
        .map(|b| vec![b[0] * cos - b[1] * sin, b[0] * sin + b[1] * cos])
        .collect();
    (
        LatticeBasis::new(rows).expect("planar construction is nonsingular"),
        attempts,
    )
}

/// As [`exact_sample_d2_with_attempts`], attempts discarded.
pub fn exact_sample_d2<R: Rng + ?Sized>(rng: &mut R) -> LatticeBasis {
    exact_sample_d2_with_attempts(rng).0
}
