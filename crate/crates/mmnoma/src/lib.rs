//! Coverage probability and system throughput of clustered millimeter-wave
//! NOMA networks.
//!
//! Base stations form a homogeneous Poisson process; each serves a cluster of
//! 2K users placed as Gaussian offsets around it (a Thomas cluster process).
//! Links are line-of-sight inside a disc of radius `r_los` and non-LOS beyond
//! it, with Nakagami fading and uniform-linear-array beamforming whose
//! misalignment gain follows a normalized Fejér kernel. Two users share each
//! resource block through power-domain NOMA.
//!
//! The crate provides:
//! - analytical coverage probabilities for three user-selection schemes
//!   (fixed-near/random-far, random-near/fixed-far, fixed-near/fixed-far),
//!   built from ordered-distance distributions and a closed-form Laplace
//!   transform of the inter-cluster interference,
//! - sparse-network closed forms for every scheme/role,
//! - NOMA and OMA system rates,
//! - an independent Monte Carlo simulator used to cross-validate all of the
//!   above.

pub mod analysis;
pub mod channel;
pub mod config;
pub mod geometry;
pub mod montecarlo;
pub mod quad;
pub mod special;
pub mod throughput;

pub use analysis::{
    coverage, coverage_far_fnrf, coverage_far_fnrf_closed, coverage_far_rnff,
    coverage_far_rnff_closed, coverage_near_fnrf, coverage_near_fnrf_closed, coverage_near_rnff,
    coverage_near_rnff_closed, coverage_single_user, laplace_full, laplace_special1,
    theta_kernel, AnalysisMode, Branch, CoverageResult, LaplaceEvaluator, LaplaceMode, Role,
};
pub use config::{
    intercept_from_carrier, normalized_noise, ConfigError, NetworkConfig, QuadratureSettings,
    RangeTag, SelectionScheme,
};
pub use montecarlo::{
    mc_coverage, mc_coverage_all, mc_laplace, mc_system_rate, McCoverageSet, McEstimate,
    McRateEstimate,
};
pub use throughput::{rate_to_threshold, system_rate_noma, system_rate_oma, RateRequirement};
