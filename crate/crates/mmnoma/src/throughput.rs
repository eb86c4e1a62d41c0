//! System throughput: target rates become SINR thresholds through the
//! Shannon outage relation, and the expected rate weights each user's rate
//! by its coverage probability. The OMA baseline halves the bandwidth per
//! user, grants full power with no partner signal, and keeps the pair's
//! beam geometry, so only the thresholds and the power split change.

use crate::analysis::{coverage, coverage_single_user, AnalysisMode, Role};
use crate::config::NetworkConfig;

/// Target rates for the paired users and the shared bandwidth.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateRequirement {
    /// Near-user target rate in bits/s.
    pub rate_near: f64,
    /// Far-user target rate in bits/s.
    pub rate_far: f64,
    /// Total bandwidth in Hz.
    pub bandwidth: f64,
}

impl RateRequirement {
    pub fn new(rate_near: f64, rate_far: f64, bandwidth: f64) -> Self {
        assert!(
            rate_near > 0.0 && rate_far > 0.0 && bandwidth > 0.0,
            "rates and bandwidth must be positive"
        );
        Self {
            rate_near,
            rate_far,
            bandwidth,
        }
    }
}

/// SINR threshold that supports rate `rate` over effective bandwidth
/// `b_eff`: tau = 2^{rate/b_eff} - 1.
pub fn rate_to_threshold(rate: f64, b_eff: f64) -> f64 {
    assert!(rate > 0.0 && b_eff > 0.0, "rate and bandwidth must be positive");
    (rate / b_eff).exp2() - 1.0
}

fn with_thresholds(cfg: &NetworkConfig, tau_near: f64, tau_far: f64) -> NetworkConfig {
    let mut derived = cfg.clone();
    derived.tau_near = tau_near;
    derived.tau_far = tau_far;
    derived
}

/// Expected NOMA system rate: rate_near * P_near + rate_far * P_far with
/// thresholds derived at full bandwidth. An infeasible power split
/// (a_far <= tau_far * a_near) makes SIC and the far link fail, so the
/// rate is zero.
pub fn system_rate_noma(cfg: &NetworkConfig, req: RateRequirement) -> f64 {
    let tau_near = rate_to_threshold(req.rate_near, req.bandwidth);
    let tau_far = rate_to_threshold(req.rate_far, req.bandwidth);
    let derived = with_thresholds(cfg, tau_near, tau_far);
    if derived.feasibility_margin() <= 0.0 {
        return 0.0;
    }
    let p_near = coverage(&derived, Role::Near, AnalysisMode::Theorem).value;
    let p_far = coverage(&derived, Role::Far, AnalysisMode::Theorem).value;
    req.rate_near * p_near + req.rate_far * p_far
}

/// Expected OMA system rate: each user gets half the bandwidth (threshold
/// exponent doubles) and full power with no SIC stage. The serving beam
/// still points at the near member, so the far user keeps its offset gain.
pub fn system_rate_oma(cfg: &NetworkConfig, req: RateRequirement) -> f64 {
    let half_band = req.bandwidth / 2.0;
    let tau_near = rate_to_threshold(req.rate_near, half_band);
    let tau_far = rate_to_threshold(req.rate_far, half_band);
    let p_near = coverage_single_user(cfg, Role::Near, tau_near).value;
    let p_far = coverage_single_user(cfg, Role::Far, tau_far).value;
    req.rate_near * p_near + req.rate_far * p_far
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_examples() {
        assert!((rate_to_threshold(1.0e8, 1.0e8) - 1.0).abs() < 1e-12);
        assert!((rate_to_threshold(3.0e7, 1.0e8) - (0.3f64.exp2() - 1.0)).abs() < 1e-12);
        let oma = rate_to_threshold(1.0e8, 0.5e8);
        assert!((oma - 3.0).abs() < 1e-12);
    }

    #[test]
    fn certain_coverage_limit_recovers_rate_sum() {
        // Vanishing noise with no interferers drives both coverage
        // probabilities to one, leaving rate_near + rate_far.
        let mut cfg = NetworkConfig::defaults();
        cfg.lambda_c = 0.0;
        cfg.noise = 1e-30;
        let req = RateRequirement::new(1.0e8, 3.0e7, 1.0e8);
        let rate = system_rate_noma(&cfg, req);
        let total = req.rate_near + req.rate_far;
        assert!(
            (rate - total).abs() < 1e-3 * total,
            "rate {rate} vs {total}"
        );
    }

    #[test]
    fn infeasible_split_yields_zero() {
        let cfg = NetworkConfig::defaults();
        // rate_far = 10 B gives tau_far = 1023; a_far - 1023 a_near < 0.
        let req = RateRequirement::new(1.0e8, 1.0e9, 1.0e8);
        assert_eq!(system_rate_noma(&cfg, req), 0.0);
    }
}
