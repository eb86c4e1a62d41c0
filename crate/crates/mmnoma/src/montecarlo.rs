//! Empirical oracle: estimate coverage probabilities, interference Laplace
//! transforms, and system rates by direct simulation of sampled network
//! realizations. Estimates are bit-exact for a fixed (cfg, seed, n)
//! regardless of worker count: every realization derives its own RNG from
//! hash(seed, index), indicator counts reduce as integers, and float
//! reductions run in index order.

use rayon::prelude::*;

use crate::channel::{interference_at, serving_power, serving_power_offset, sinrs_from_powers};
use crate::config::{NetworkConfig, SelectionScheme};
use crate::geometry::{default_window_radius, sample_realization, Realization};
use crate::throughput::{rate_to_threshold, RateRequirement};
use crate::Role;

/// Sample-mean estimate with a 95% normal-approximation half-width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub half_width: f64,
    pub n_samples: u64,
    pub seed: u64,
}

/// Coverage estimates for all six (scheme, role) combinations from one
/// shared set of realizations, so scheme comparisons see common random
/// numbers.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McCoverageSet {
    pub fnrf_near: McEstimate,
    pub fnrf_far: McEstimate,
    pub rnff_near: McEstimate,
    pub rnff_far: McEstimate,
    pub fnff_near: McEstimate,
    pub fnff_far: McEstimate,
}

/// Empirical NOMA and OMA system rates over common realizations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McRateEstimate {
    pub noma: f64,
    pub noma_half_width: f64,
    pub oma: f64,
    pub oma_half_width: f64,
    pub n_samples: u64,
    pub seed: u64,
}

/// SplitMix64-style mixer deriving independent per-realization seeds and
/// per-decision hashes from (seed, index).
fn mix_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform pick among the far candidates k+1..=2K for a fixed near rank.
fn far_pick(real_seed: u64, k: usize, users: usize) -> usize {
    k + 1 + (mix_seed(real_seed, 0xFA12) % (users - k) as u64) as usize
}

/// Uniform pick among the near candidates 1..=j-1 for a fixed far rank.
fn near_pick(real_seed: u64, j: usize) -> usize {
    1 + (mix_seed(real_seed, 0x0EA3) % (j - 1) as u64) as usize
}

/// Near-user event at the given distance rank: SIC decode of the far
/// message and decode of the own message both clear their thresholds. The
/// serving beam points at this user.
fn near_event(real: &Realization, cfg: &NetworkConfig, rank: usize) -> bool {
    let u = real.user_of_rank(rank);
    let x = serving_power(real, cfg, u);
    let i = interference_at(real, cfg, u);
    let t = sinrs_from_powers(cfg, x, i, x, i);
    t.gamma_sic > cfg.tau_far && t.gamma_near > cfg.tau_near
}

/// Far-user event at the given distance rank: the far message decodes
/// against the near user's power share. The serving beam points at the
/// partner, so this user sees its offset Fejer gain.
fn far_event(real: &Realization, cfg: &NetworkConfig, rank: usize) -> bool {
    let u = real.user_of_rank(rank);
    let x = serving_power_offset(real, cfg, u);
    let i = interference_at(real, cfg, u);
    let t = sinrs_from_powers(cfg, x, i, x, i);
    t.gamma_far > cfg.tau_far
}

/// Scheme ranks with fallbacks for the roles a scheme leaves random:
/// near rank defaults to 1, far rank to 2K.
fn scheme_ranks(cfg: &NetworkConfig) -> (usize, usize) {
    (
        cfg.near_index().unwrap_or(1),
        cfg.far_index().unwrap_or(cfg.users()),
    )
}

fn role_event(
    cfg: &NetworkConfig,
    role: Role,
    real: &Realization,
    real_seed: u64,
) -> bool {
    let users = cfg.users();
    match (cfg.scheme, role) {
        (SelectionScheme::Fnrf { k }, Role::Near) => near_event(real, cfg, k),
        (SelectionScheme::Fnrf { k }, Role::Far) => {
            far_event(real, cfg, far_pick(real_seed, k, users))
        }
        (SelectionScheme::Rnff { j }, Role::Near) => {
            near_event(real, cfg, near_pick(real_seed, j))
        }
        (SelectionScheme::Rnff { j }, Role::Far) => far_event(real, cfg, j),
        (SelectionScheme::Fnff { k, .. }, Role::Near) => near_event(real, cfg, k),
        (SelectionScheme::Fnff { j, .. }, Role::Far) => far_event(real, cfg, j),
    }
}

fn estimate_from_count(count: u64, n: u64, seed: u64) -> McEstimate {
    let mean = count as f64 / n as f64;
    let half_width = if count == 0 || count == n {
        3.0 / n as f64
    } else {
        1.96 * (mean * (1.0 - mean) / n as f64).sqrt()
    };
    McEstimate {
        mean,
        half_width,
        n_samples: n,
        seed,
    }
}

/// Empirical coverage probability of one role under the configured scheme.
pub fn mc_coverage(cfg: &NetworkConfig, role: Role, n: u64, seed: u64) -> McEstimate {
    assert!(n >= 1, "need at least one sample");
    let window = default_window_radius(cfg);
    let count: u64 = (0..n)
        .into_par_iter()
        .map(|i| {
            let real_seed = mix_seed(seed, i);
            let real = sample_realization(cfg, window, real_seed);
            u64::from(role_event(cfg, role, &real, real_seed))
        })
        .sum();
    estimate_from_count(count, n, seed)
}

/// Empirical coverage of all six (scheme, role) combinations over shared
/// realizations. Fixed ranks come from the configured scheme where it pins
/// them; the remaining ones default to near rank 1 and far rank 2K.
pub fn mc_coverage_all(cfg: &NetworkConfig, n: u64, seed: u64) -> McCoverageSet {
    assert!(n >= 1, "need at least one sample");
    let window = default_window_radius(cfg);
    let (k, j) = scheme_ranks(cfg);
    let users = cfg.users();
    let totals = (0..n)
        .into_par_iter()
        .map(|i| {
            let real_seed = mix_seed(seed, i);
            let real = sample_realization(cfg, window, real_seed);
            let near_k = near_event(&real, cfg, k);
            let far_j = far_event(&real, cfg, j);
            let far_random = far_event(&real, cfg, far_pick(real_seed, k, users));
            let near_random = near_event(&real, cfg, near_pick(real_seed, j));
            [
                u64::from(near_k),
                u64::from(far_random),
                u64::from(near_random),
                u64::from(far_j),
                u64::from(near_k),
                u64::from(far_j),
            ]
        })
        .reduce(
            || [0u64; 6],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    McCoverageSet {
        fnrf_near: estimate_from_count(totals[0], n, seed),
        fnrf_far: estimate_from_count(totals[1], n, seed),
        rnff_near: estimate_from_count(totals[2], n, seed),
        rnff_far: estimate_from_count(totals[3], n, seed),
        fnff_near: estimate_from_count(totals[4], n, seed),
        fnff_far: estimate_from_count(totals[5], n, seed),
    }
}

/// Empirical interference Laplace transform E[exp(-s I)] at a random user
/// of the typical cluster (the first sampled offset, whose radial law is
/// the unordered Rayleigh distribution).
pub fn mc_laplace(cfg: &NetworkConfig, s: f64, n: u64, seed: u64) -> McEstimate {
    assert!(s >= 0.0, "Laplace argument must be nonnegative");
    assert!(n >= 1, "need at least one sample");
    let window = default_window_radius(cfg);
    let values: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|i| {
            let real_seed = mix_seed(seed, i);
            let real = sample_realization(cfg, window, real_seed);
            (-s * interference_at(&real, cfg, 0)).exp()
        })
        .collect();
    let mean = values.iter().sum::<f64>() / n as f64;
    let variance = if n < 2 {
        0.0
    } else {
        values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64
    };
    McEstimate {
        mean,
        half_width: 1.96 * (variance / n as f64).sqrt(),
        n_samples: n,
        seed,
    }
}

/// Empirical system rates: NOMA indicators under the derived thresholds,
/// OMA indicators with half bandwidth, full power, an aligned beam in each
/// user's own slot, and no SIC stage. Both use the same realizations.
pub fn mc_system_rate(
    cfg: &NetworkConfig,
    req: RateRequirement,
    n: u64,
    seed: u64,
) -> McRateEstimate {
    assert!(n >= 1, "need at least one sample");
    let mut noma_cfg = cfg.clone();
    noma_cfg.tau_near = rate_to_threshold(req.rate_near, req.bandwidth);
    noma_cfg.tau_far = rate_to_threshold(req.rate_far, req.bandwidth);
    let oma_tau_near = rate_to_threshold(req.rate_near, req.bandwidth / 2.0);
    let oma_tau_far = rate_to_threshold(req.rate_far, req.bandwidth / 2.0);
    let window = default_window_radius(cfg);
    let (k, j) = scheme_ranks(cfg);
    let users = cfg.users();
    let totals = (0..n)
        .into_par_iter()
        .map(|i| {
            let real_seed = mix_seed(seed, i);
            let real = sample_realization(&noma_cfg, window, real_seed);
            let near_rank = match noma_cfg.scheme {
                SelectionScheme::Rnff { j } => near_pick(real_seed, j),
                _ => k,
            };
            let far_rank = match noma_cfg.scheme {
                SelectionScheme::Fnrf { k } => far_pick(real_seed, k, users),
                _ => j,
            };
            let noma_near = near_event(&real, &noma_cfg, near_rank);
            let noma_far = far_event(&real, &noma_cfg, far_rank);
            let u_near = real.user_of_rank(near_rank);
            let u_far = real.user_of_rank(far_rank);
            // Orthogonal access keeps the pair's beam geometry: full power,
            // no partner signal, the far member still offset from boresight.
            let oma_near = serving_power(&real, &noma_cfg, u_near)
                / (interference_at(&real, &noma_cfg, u_near) + noma_cfg.noise)
                > oma_tau_near;
            let oma_far = serving_power_offset(&real, &noma_cfg, u_far)
                / (interference_at(&real, &noma_cfg, u_far) + noma_cfg.noise)
                > oma_tau_far;
            [
                u64::from(noma_near),
                u64::from(noma_far),
                u64::from(oma_near),
                u64::from(oma_far),
            ]
        })
        .reduce(
            || [0u64; 4],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    let parts: Vec<McEstimate> = totals
        .iter()
        .map(|&c| estimate_from_count(c, n, seed))
        .collect();
    McRateEstimate {
        noma: req.rate_near * parts[0].mean + req.rate_far * parts[1].mean,
        noma_half_width: req.rate_near * parts[0].half_width + req.rate_far * parts[1].half_width,
        oma: req.rate_near * parts[2].mean + req.rate_far * parts[3].mean,
        oma_half_width: req.rate_near * parts[2].half_width + req.rate_far * parts[3].half_width,
        n_samples: n,
        seed,
    }
}
