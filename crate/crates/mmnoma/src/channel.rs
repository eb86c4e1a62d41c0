//! Path loss, effective beamforming gains, and per-realization SINR
//! computation.

use crate::config::NetworkConfig;
use crate::geometry::Realization;
use crate::special::fejer_gain;

/// Two-branch LOS-disc path loss law.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathLossLaw {
    pub c_los: f64,
    pub c_nlos: f64,
    pub alpha_los: f64,
    pub alpha_nlos: f64,
    pub r_los: f64,
}

impl PathLossLaw {
    pub fn from_config(cfg: &NetworkConfig) -> Self {
        Self {
            c_los: cfg.c_los,
            c_nlos: cfg.c_nlos,
            alpha_los: cfg.alpha_los,
            alpha_nlos: cfg.alpha_nlos,
            r_los: cfg.r_los,
        }
    }
}

/// Distance-dependent channel gain: C_L r^{-alpha_L} inside the LOS disc,
/// C_N r^{-alpha_N} outside. The boundary r = R_L takes the NLOS branch.
pub fn path_loss(r: f64, law: &PathLossLaw) -> f64 {
    assert!(r > 0.0, "path_loss requires r > 0, got {r}");
    if r < law.r_los {
        law.c_los * r.powf(-law.alpha_los)
    } else {
        law.c_nlos * r.powf(-law.alpha_nlos)
    }
}

/// Serving-link effective gain M |g|^2 of a perfectly steered ULA beam.
pub fn effective_gain_aligned(g2: f64, m: u32) -> f64 {
    assert!(g2 >= 0.0);
    f64::from(m) * g2
}

/// Interfering-link effective gain M |g|^2 G_F(delta) at beam offset delta.
pub fn effective_gain_misaligned(g2: f64, m: u32, delta: f64) -> f64 {
    assert!(g2 >= 0.0);
    f64::from(m) * g2 * fejer_gain(delta, m)
}

/// Linear SINRs of one NOMA pair in one realization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SinrTriple {
    /// Near user decoding the far user's signal (SIC pre-decode stage).
    pub gamma_sic: f64,
    /// Near user decoding its own signal after cancellation.
    pub gamma_near: f64,
    /// Far user decoding its own signal against the near user's power.
    pub gamma_far: f64,
}

/// Total inter-cluster interference at one typical-cluster user: sum over
/// interfering base stations of M |g|^2 G_F(theta_u - delta_y) L_p(d).
pub fn interference_at(real: &Realization, cfg: &NetworkConfig, user: usize) -> f64 {
    let law = PathLossLaw::from_config(cfg);
    let p = real.offsets[user];
    let theta = real.user_theta[user];
    let mut acc = 0.0;
    for (y, bs) in real.bs_points.iter().enumerate() {
        let d = (p[0] - bs[0]).hypot(p[1] - bs[1]);
        let g2 = real.cross_fade_of(user, y);
        let delta = theta - real.interferer_beam_offsets[y];
        acc += effective_gain_misaligned(g2, cfg.antennas, delta) * path_loss(d, &law);
    }
    acc
}

/// Serving-link received channel power M |g|^2 L_p(r) of one user with the
/// serving beam pointed at it.
pub fn serving_power(real: &Realization, cfg: &NetworkConfig, user: usize) -> f64 {
    let law = PathLossLaw::from_config(cfg);
    effective_gain_aligned(real.serving_fade[user], cfg.antennas)
        * path_loss(real.user_distance[user], &law)
}

/// Serving-link received channel power of a user the serving beam is not
/// pointed at: the boresight tracks its partner, leaving this user offset
/// by its own angular coordinate.
pub fn serving_power_offset(real: &Realization, cfg: &NetworkConfig, user: usize) -> f64 {
    let law = PathLossLaw::from_config(cfg);
    effective_gain_misaligned(real.serving_fade[user], cfg.antennas, real.user_theta[user])
        * path_loss(real.user_distance[user], &law)
}

/// SINRs of the pair formed by the near_rank-th and far_rank-th nearest
/// users (1-based ranks, near_rank < far_rank). The serving beam points at
/// the near user; the far user sees its offset Fejer gain.
pub fn compute_sinrs(
    real: &Realization,
    cfg: &NetworkConfig,
    pair: (usize, usize),
) -> SinrTriple {
    let (near_rank, far_rank) = pair;
    assert!(
        near_rank >= 1 && far_rank <= cfg.users() && near_rank < far_rank,
        "invalid pair ranks ({near_rank}, {far_rank}) for 2K = {}",
        cfg.users()
    );
    let u_near = real.user_of_rank(near_rank);
    let u_far = real.user_of_rank(far_rank);
    let x_near = serving_power(real, cfg, u_near);
    let x_far = serving_power_offset(real, cfg, u_far);
    let i_near = interference_at(real, cfg, u_near);
    let i_far = interference_at(real, cfg, u_far);
    sinrs_from_powers(cfg, x_near, i_near, x_far, i_far)
}

/// SINR algebra on precomputed serving powers and interferences; shared by
/// the per-pair API and the batched Monte Carlo driver.
pub fn sinrs_from_powers(
    cfg: &NetworkConfig,
    x_near: f64,
    i_near: f64,
    x_far: f64,
    i_far: f64,
) -> SinrTriple {
    let noise = cfg.noise;
    SinrTriple {
        gamma_sic: cfg.a_far * x_near / (cfg.a_near * x_near + i_near + noise),
        gamma_near: cfg.a_near * x_near / (i_near + noise),
        gamma_far: cfg.a_far * x_far / (cfg.a_near * x_far + i_far + noise),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::sample_realization;

    fn law() -> PathLossLaw {
        PathLossLaw::from_config(&NetworkConfig::defaults())
    }

    #[test]
    fn path_loss_branches() {
        let law = law();
        let c = law.c_los;
        assert!((path_loss(1.0, &law) - c).abs() < 1e-18);
        let r = law.r_los / 2.0;
        assert!((path_loss(r, &law) - 4.0 * c / (law.r_los * law.r_los)).abs() < 1e-18);
        let r = 2.0 * law.r_los;
        let expect = law.c_nlos / (16.0 * law.r_los.powi(4));
        assert!((path_loss(r, &law) - expect).abs() < expect * 1e-12);
        // Boundary belongs to the NLOS branch.
        let at = path_loss(law.r_los, &law);
        let nlos = law.c_nlos * law.r_los.powf(-law.alpha_nlos);
        assert_eq!(at, nlos);
    }

    #[test]
    fn gains() {
        assert_eq!(effective_gain_aligned(1.0, 10), 10.0);
        assert_eq!(effective_gain_aligned(0.0, 7), 0.0);
        assert_eq!(effective_gain_misaligned(1.0, 10, 0.0), 10.0);
        assert!(effective_gain_misaligned(1.0, 10, 0.2) < 1e-26);
    }

    #[test]
    fn sinr_noise_only_limits() {
        let mut cfg = NetworkConfig::defaults();
        cfg.lambda_c = 0.0;
        let real = sample_realization(&cfg, 2000.0, 5);
        let t = compute_sinrs(&real, &cfg, (1, cfg.users()));
        let u = real.user_of_rank(1);
        let x = serving_power(&real, &cfg, u);
        assert!((t.gamma_near - cfg.a_near * x / cfg.noise).abs() < 1e-12 * t.gamma_near);
        assert!(
            (t.gamma_sic - cfg.a_far * x / (cfg.a_near * x + cfg.noise)).abs()
                < 1e-12 * t.gamma_sic
        );
        // SIR ceiling: gamma_sic < a_far / a_near always.
        assert!(t.gamma_sic < cfg.a_far / cfg.a_near);
        assert!(t.gamma_far < cfg.a_far / cfg.a_near);
    }
}
