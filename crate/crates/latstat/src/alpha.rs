//! A computable stand-in for the lattice height alpha(L) = max over
//! L-rational subspaces V of 1/covol(L ∩ V). Exact evaluation means
//! optimizing over all rational subspaces, so we use the Gram-Schmidt
//! profile of an LLL-reduced basis instead: partial products of the
//! orthogonalized lengths bound the subspace covolumes within the usual
//! 2^{d(d-1)/4} LLL factor in both directions. The proxy is diagnostic
//! only; nothing in the counting pipeline consumes it.

use crate::error::Result;
use crate::lattice::LatticeBasis;
use crate::lll::{gram_schmidt_norms, lll_reduce, DEFAULT_DELTA};

/// max over m = 1..d of the inverse product of the first m Gram-Schmidt
/// lengths of an LLL-reduced basis.
pub fn alpha_proxy(basis: &LatticeBasis) -> Result<f64> {
    let reduced = lll_reduce(basis, DEFAULT_DELTA)?;
    let norms = gram_schmidt_norms(&reduced)?;
    let mut best = f64::MIN;
    let mut product = 1.0;
    for n in norms {
        product *= n;
        best = best.max(1.0 / product);
    }
    Ok(best)
}
