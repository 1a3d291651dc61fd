//! Moments, set-partition cumulants, normal-law targets, Kolmogorov-Smirnov
//! distances, and the Monte Carlo verification suites built on them.

mod checks;
mod cumulants;
mod ks;
mod normal;
mod partitions;

pub use checks::{
    clt_experiment, clt_samples, rogers_check, siegel_mvt_check, summarize, CltReport,
    RogersReport, SampleRecord, SamplerConfig, SampleSummary, SiegelReport,
};
pub use cumulants::cumulant;
pub use ks::ks_statistic;
pub use normal::normal_cdf;
pub use partitions::set_partitions;
