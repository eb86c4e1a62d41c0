//! Shared fixtures for the integration suites: randomized sparse-limit
//! configurations and adaptive-quadrature parent integrals for the
//! closed-form coverage expressions.
#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::Rng;

use mmnoma::geometry::{conditional_far_pdf, ordered_pdf, rayleigh_cdf, rayleigh_pdf};
use mmnoma::quad::integrate;
use mmnoma::special::{chebyshev_nodes, fejer_gain};
use mmnoma::{
    intercept_from_carrier, theta_kernel, Branch, LaplaceEvaluator, LaplaceMode, NetworkConfig,
};

/// A random sparse-limit configuration with a strictly positive SIC margin
/// and the quadratic LOS exponent the closed forms require.
pub fn random_sparse_cfg(rng: &mut StdRng) -> NetworkConfig {
    let mut cfg = NetworkConfig::defaults();
    cfg.lambda_c = 0.0;
    cfg.alpha_los = 2.0;
    cfg.pairs = rng.gen_range(1..=5usize);
    cfg.a_near = rng.gen_range(0.05..0.45);
    cfg.a_far = 1.0 - cfg.a_near;
    let headroom: f64 = rng.gen_range(0.1..1.0);
    cfg.tau_far = 0.9 * headroom * cfg.a_far / cfg.a_near;
    cfg.tau_near = rng.gen_range(0.1..3.0);
    cfg.antennas = *[4u32, 8, 16, 32].get(rng.gen_range(0..4)).unwrap();
    cfg.nakagami_los = rng.gen_range(1..=4u32);
    cfg.sigma = rng.gen_range(5.0..12.0);
    cfg.r_los = rng.gen_range(120.0..200.0);
    cfg.noise = 10f64.powf(rng.gen_range(-10.0..-7.0));
    cfg.carrier_hz = rng.gen_range(28.0e9..73.0e9);
    cfg.c_los = intercept_from_carrier(cfg.carrier_hz);
    cfg.c_nlos = cfg.c_los;
    cfg.quad.n2 = 12;
    cfg.validate().unwrap();
    cfg
}

// Nested adaptive quadrature needs well-separated tolerances: the inner
// result jitters by its own tolerance as the outer variable moves the
// inner limits, and an outer pass tighter than that jitter refines
// forever. The outer 1e-6 stays two decades under the closed-form
// agreement window.
pub const INNER_TOL: f64 = 1e-11;
pub const OUTER_TOL: f64 = 1e-6;

pub fn unity_laplace(cfg: &NetworkConfig) -> LaplaceEvaluator {
    assert_eq!(cfg.lambda_c, 0.0);
    LaplaceEvaluator::new(cfg, LaplaceMode::Full)
}

/// Near user at fixed rank k: LOS-disc integral of the near kernel against
/// the ordered distance density.
pub fn near_fixed_parent(cfg: &NetworkConfig, k: usize) -> f64 {
    let lap = unity_laplace(cfg);
    let (tau, beta) = cfg.near_kernel();
    integrate(
        |r| theta_kernel(r, tau, beta, Branch::Los, cfg, &lap) * ordered_pdf(k, r, cfg.pairs, cfg.sigma),
        0.0,
        cfg.r_los,
        1e-9,
    )
}

/// Far partner of a fixed near rank k, drawn uniformly among farther users:
/// beam-averaged double integral over the joint (near, partner) law.
pub fn far_random_parent(cfg: &NetworkConfig, k: usize) -> f64 {
    let lap = unity_laplace(cfg);
    let margin = cfg.feasibility_margin();
    let tau = cfg.tau_far;
    let rule = chebyshev_nodes(cfg.quad.n2);
    rule.integrate_unit(|g| {
        let gf = fejer_gain(g, cfg.antennas);
        if tau > 0.0 && gf == 0.0 {
            return 0.0;
        }
        let beta = margin * gf;
        integrate(
            |rk| {
                ordered_pdf(k, rk, cfg.pairs, cfg.sigma)
                    * integrate(
                        |rj| {
                            theta_kernel(rj, tau, beta, Branch::Los, cfg, &lap)
                                * conditional_far_pdf(rj, rk, cfg.sigma)
                        },
                        rk,
                        cfg.r_los,
                        INNER_TOL,
                    )
            },
            0.0,
            cfg.r_los,
            OUTER_TOL,
        )
    })
}

/// Near partner of a fixed far rank j, drawn uniformly among nearer users:
/// truncated-Rayleigh conditional inside the ordered far density.
pub fn near_random_parent(cfg: &NetworkConfig, j: usize) -> f64 {
    let lap = unity_laplace(cfg);
    let (tau, beta) = cfg.near_kernel();
    integrate(
        |rj| {
            ordered_pdf(j, rj, cfg.pairs, cfg.sigma) / rayleigh_cdf(rj, cfg.sigma)
                * integrate(
                    |rk| {
                        theta_kernel(rk, tau, beta, Branch::Los, cfg, &lap)
                            * rayleigh_pdf(rk, cfg.sigma)
                    },
                    0.0,
                    rj,
                    INNER_TOL,
                )
        },
        0.0,
        cfg.r_los,
        OUTER_TOL,
    )
}

/// Far user at fixed rank j: beam-averaged LOS-disc integral against the
/// ordered distance density.
pub fn far_fixed_parent(cfg: &NetworkConfig, j: usize) -> f64 {
    let lap = unity_laplace(cfg);
    let margin = cfg.feasibility_margin();
    let tau = cfg.tau_far;
    let rule = chebyshev_nodes(cfg.quad.n2);
    rule.integrate_unit(|g| {
        let gf = fejer_gain(g, cfg.antennas);
        if tau > 0.0 && gf == 0.0 {
            return 0.0;
        }
        let beta = margin * gf;
        integrate(
            |rj| {
                theta_kernel(rj, tau, beta, Branch::Los, cfg, &lap)
                    * ordered_pdf(j, rj, cfg.pairs, cfg.sigma)
            },
            0.0,
            cfg.r_los,
            1e-9,
        )
    })
}
