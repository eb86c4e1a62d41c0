//! Sparse-network closed forms: unity interference Laplace transform,
//! LOS-only coverage, alpha_los = 2. Every distance integral collapses to
//! finite sums of exponentials (near user), exponential-integral pairs (far
//! user), or digamma differences (random-near user).

use crate::analysis::coverage::{finish, AnalysisMode, CoverageResult, Role};
use crate::config::NetworkConfig;
use crate::geometry::order_prefactor;
use crate::special::{alzer_psi, binomial, chebyshev_nodes, digamma, fejer_gain};

fn require_sparse_closed_form(cfg: &NetworkConfig) {
    assert!(
        (cfg.alpha_los - 2.0).abs() < 1e-9,
        "closed forms require alpha_los = 2, got {}",
        cfg.alpha_los
    );
}

fn sign_pow(e: usize) -> f64 {
    if e % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Near-user closed form at a fixed near rank k: double binomial sum with
/// A(n, w) = n psi tau noise / (beta M C_L) + (2K - w)/(2 sigma^2) and
/// leading constant (2K)!/(2 (k-1)! (2K-k)!).
fn near_fixed_closed_value(cfg: &NetworkConfig, k: usize) -> f64 {
    let (tau, beta) = cfg.near_kernel();
    let users = cfg.users();
    let sigma2 = cfg.sigma * cfg.sigma;
    let shape = cfg.nakagami_los;
    let psi = alzer_psi(shape);
    let q_base = psi * tau * cfg.noise / (beta * f64::from(cfg.antennas) * cfg.c_los);
    let gamma_k = order_prefactor(k, cfg.pairs) / 2.0;
    let r2 = cfg.r_los * cfg.r_los;
    let mut acc = 0.0;
    for n in 1..=shape {
        for w in 0..k {
            let a = f64::from(n) * q_base + (users - w) as f64 / (2.0 * sigma2);
            acc += sign_pow(n as usize + k - w)
                * binomial(u64::from(shape), u64::from(n))
                * binomial((k - 1) as u64, w as u64)
                * (gamma_k / sigma2)
                * (-(-a * r2).exp_m1())
                / a;
        }
    }
    acc
}

/// Fixed-near-rank near user (sparse closed form).
pub fn coverage_near_fnrf_closed(cfg: &NetworkConfig) -> CoverageResult {
    require_sparse_closed_form(cfg);
    let k = cfg
        .near_index()
        .expect("closed form needs a fixed near rank");
    let raw = near_fixed_closed_value(cfg, k);
    finish(cfg, Role::Near, AnalysisMode::ClosedForm, raw, None)
}

/// Random-far-partner far user (sparse closed form): for each Nakagami term
/// the distance integral against the partner weight gives, per (n, w),
/// (1/chi_w) [(1 - e^{-Q R^2})/Q - (1 - e^{-(Q+chi_w) R^2})/(Q+chi_w)]
/// with Q = n psi tau_far noise / ((a_far - tau_far a_near) G_F(g) M C_L)
/// + 1/(2 sigma^2) and chi_w = (2K-1-w)/(2 sigma^2); the serving-beam
/// offset g is averaged on the order-n2 Chebyshev rule.
pub fn coverage_far_fnrf_closed(cfg: &NetworkConfig) -> CoverageResult {
    require_sparse_closed_form(cfg);
    let k = cfg
        .near_index()
        .expect("closed form needs a fixed near rank");
    let users = cfg.users();
    let sigma2 = cfg.sigma * cfg.sigma;
    let shape = cfg.nakagami_los;
    let psi = alzer_psi(shape);
    let margin = cfg.feasibility_margin();
    let tau = cfg.tau_far;
    let prefactor = order_prefactor(k, cfg.pairs);
    let r2 = cfg.r_los * cfg.r_los;
    let rule = chebyshev_nodes(cfg.quad.n2);
    let raw = rule.integrate_unit(|g| {
        let gf = fejer_gain(g, cfg.antennas);
        if tau > 0.0 && gf == 0.0 {
            return 0.0;
        }
        let mut acc = 0.0;
        for n in 1..=shape {
            let q_int = if tau == 0.0 {
                0.0
            } else {
                f64::from(n) * psi * tau * cfg.noise
                    / (margin * gf * f64::from(cfg.antennas) * cfg.c_los)
            };
            let q = q_int + 1.0 / (2.0 * sigma2);
            let sign_n = sign_pow(n as usize + 1);
            for w in 0..k {
                let chi = (users - 1 - w) as f64 / (2.0 * sigma2);
                let bracket =
                    (-(-q * r2).exp_m1()) / q - (-(-(q + chi) * r2).exp_m1()) / (q + chi);
                acc += sign_n
                    * sign_pow(k - 1 - w)
                    * binomial(u64::from(shape), u64::from(n))
                    * binomial((k - 1) as u64, w as u64)
                    * (prefactor / (4.0 * sigma2 * sigma2))
                    * bracket
                    / chi;
            }
        }
        acc
    });
    finish(cfg, Role::Far, AnalysisMode::ClosedForm, raw, None)
}

/// Random-near-partner near user (sparse closed form). The inner truncated
/// Rayleigh mass divided by the conditioning CDF produces, after expanding
/// the ordered density of the far rank j, digamma differences
/// Omega(chi_w + lambda) - Omega(chi_w) with
/// Omega(d) = psi0(2 sigma^2 d) + e^{-d R^2} / (2 sigma^2 d),
/// chi_w = (2K - w)/(2 sigma^2), and rate
/// lambda = n psi tau noise / (beta M C_L) + 1/(2 sigma^2);
/// the 1/(2 sigma^2) term is the Rayleigh factor of the inner density.
/// Carries an O(e^{-R^2/(2 sigma^2)}) truncation approximation.
pub fn coverage_near_rnff_closed(cfg: &NetworkConfig) -> CoverageResult {
    require_sparse_closed_form(cfg);
    let j = cfg.far_index().expect("closed form needs a fixed far rank");
    let users = cfg.users();
    let sigma2 = cfg.sigma * cfg.sigma;
    let r2 = cfg.r_los * cfg.r_los;
    let leak = (-r2 / (2.0 * sigma2)).exp();
    let warning = if leak > 1e-3 {
        Some(format!(
            "distance-truncation approximation degrades: exp(-R_L^2/(2 sigma^2)) = {leak:.2e} > 1e-3"
        ))
    } else {
        None
    };
    let (tau, beta) = cfg.near_kernel();
    if tau == 0.0 {
        return finish(cfg, Role::Near, AnalysisMode::ClosedForm, 1.0, warning);
    }
    let shape = cfg.nakagami_los;
    let psi = alzer_psi(shape);
    let gamma_j = order_prefactor(j, cfg.pairs) / 2.0;
    let omega = |d: f64| digamma(2.0 * sigma2 * d) + (-d * r2).exp() / (2.0 * sigma2 * d);
    let mut acc = 0.0;
    for n in 1..=shape {
        let lam = f64::from(n) * psi * tau * cfg.noise
            / (beta * f64::from(cfg.antennas) * cfg.c_los)
            + 1.0 / (2.0 * sigma2);
        for w in 0..j {
            let chi = (users - w) as f64 / (2.0 * sigma2);
            acc += sign_pow(n as usize + j - w)
                * binomial((j - 1) as u64, w as u64)
                * binomial(u64::from(shape), u64::from(n))
                * (gamma_j / (sigma2 * lam))
                * (omega(chi + lam) - omega(chi));
        }
    }
    finish(cfg, Role::Near, AnalysisMode::ClosedForm, acc, warning)
}

/// Fixed-far-rank far user (sparse closed form): per (n, w) the ordered
/// density integrates to (1 - e^{-Q2 R^2})/Q2 with
/// Q2 = n psi tau_far noise / ((a_far - tau_far a_near) G_F(g) M C_L)
/// + (2K - w)/(2 sigma^2), beam offset averaged on the Chebyshev rule.
pub fn coverage_far_rnff_closed(cfg: &NetworkConfig) -> CoverageResult {
    require_sparse_closed_form(cfg);
    let j = cfg.far_index().expect("closed form needs a fixed far rank");
    let users = cfg.users();
    let sigma2 = cfg.sigma * cfg.sigma;
    let shape = cfg.nakagami_los;
    let psi = alzer_psi(shape);
    let margin = cfg.feasibility_margin();
    let tau = cfg.tau_far;
    let gamma_j = order_prefactor(j, cfg.pairs) / 2.0;
    let r2 = cfg.r_los * cfg.r_los;
    let rule = chebyshev_nodes(cfg.quad.n2);
    let raw = rule.integrate_unit(|g| {
        let gf = fejer_gain(g, cfg.antennas);
        if tau > 0.0 && gf == 0.0 {
            return 0.0;
        }
        let mut acc = 0.0;
        for n in 1..=shape {
            let q_int = if tau == 0.0 {
                0.0
            } else {
                f64::from(n) * psi * tau * cfg.noise
                    / (margin * gf * f64::from(cfg.antennas) * cfg.c_los)
            };
            for w in 0..j {
                let q2 = q_int + (users - w) as f64 / (2.0 * sigma2);
                acc += sign_pow(n as usize + j - w)
                    * binomial((j - 1) as u64, w as u64)
                    * binomial(u64::from(shape), u64::from(n))
                    * (gamma_j / sigma2)
                    * (-(-q2 * r2).exp_m1())
                    / q2;
            }
        }
        acc
    });
    finish(cfg, Role::Far, AnalysisMode::ClosedForm, raw, None)
}
