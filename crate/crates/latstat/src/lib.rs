//! Lattice point counting in domains cut out by a product of block norms,
//! with the exact volume and limiting-variance formulas and the Monte Carlo
//! machinery to verify the distributional behavior of counting
//! discrepancies over random unimodular lattices.
//!
//! The pieces fit together like this:
//!
//! * [`domain`] describes the counting domains: a partition of the
//!   coordinates into blocks, an interval constraint on the product of
//!   block norms, an angular region on the product of block spheres, and a
//!   norm cutoff T. [`volume`] evaluates their measure in closed form (a
//!   polynomial in log T) and [`variance`] the limiting variance of the
//!   counting discrepancy.
//! * [`tiling`] realizes the exact self-similarity of the domains under the
//!   determinant-one diagonal flow: the indicator decomposes into finitely
//!   many flow translates of two fixed tiles, which is what makes counting
//!   at huge T cheap. [`counting`] implements both the brute-force counter
//!   and the flow-accelerated one, bit-for-bit equal.
//! * [`lattice`], [`lll`], and [`enumerate`] provide the lattice plumbing:
//!   bases, diagonal flows, reduction, and Fincke-Pohst enumeration.
//! * [`sample`] draws random unimodular lattices (Hecke sublattices of Z^d,
//!   plus an exact planar sampler), [`alpha`] scores their cusp excursions,
//!   and [`stats`] runs the verification suites: mean value, mean square,
//!   and the normal-limit experiment with cumulant and KS diagnostics.

pub mod alpha;
pub mod counting;
pub mod domain;
pub mod enumerate;
pub mod error;
pub mod lattice;
pub mod lll;
mod matrix;
pub mod partition;
mod quad;
pub mod region;
pub mod sample;
pub mod stats;
pub mod tiling;
pub mod variance;
pub mod volume;

pub use counting::{
    count_bruteforce, count_tiled, discrepancy, siegel_transform, CountMethod, CountResult,
    TestFunctionSpec,
};
pub use domain::{DomainSpec, Interval};
pub use enumerate::{enumerate_in_box, BoxConstraint, LatticePoint};
pub use error::{Error, Result};
pub use lattice::{DiagonalFlow, LatticeBasis};
pub use partition::DimensionPartition;
pub use region::{AngularRegion, RegionFactor};
pub use sample::{exact_sample_d2, hecke_sample, sample_rng};
pub use stats::{
    clt_experiment, clt_samples, rogers_check, siegel_mvt_check, summarize, SampleRecord,
    SamplerConfig, SampleSummary,
};
pub use variance::{variance_series, VarianceResult};
pub use volume::domain_volume;
