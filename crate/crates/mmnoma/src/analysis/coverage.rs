//! Coverage probability theorems: outer distance integrals of the
//! fading-tail kernel against the scheme-specific distance densities, with
//! the far user's serving beam offset averaged by Gauss-Chebyshev
//! quadrature.

use crate::analysis::laplace::{LaplaceEvaluator, LaplaceMode};
use crate::config::{NetworkConfig, SelectionScheme};
use crate::geometry::{order_prefactor, ordered_pdf, rayleigh_cdf, rayleigh_pdf};
use crate::quad;
use crate::special::{alzer_psi, binomial, chebyshev_nodes, fejer_gain};

/// Which user of the pair a result refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Near,
    Far,
}

/// Evaluation method tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AnalysisMode {
    /// Full interference model.
    Theorem,
    /// LOS-only interference (alpha_los = 2).
    Special1,
    /// Sparse-network closed forms (unity Laplace, LOS-only coverage).
    ClosedForm,
    /// Empirical estimate; produced by the montecarlo module only.
    MonteCarlo,
}

impl AnalysisMode {
    pub fn label(self) -> &'static str {
        match self {
            AnalysisMode::Theorem => "theorem",
            AnalysisMode::Special1 => "special1",
            AnalysisMode::ClosedForm => "special2-closed-form",
            AnalysisMode::MonteCarlo => "monte-carlo",
        }
    }
}

/// Propagation branch of the distance integrand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Los,
    Nlos,
}

/// Coverage value with evaluation metadata. `value` is clamped to [0, 1];
/// `raw_value` keeps the pre-clamp number so approximation overshoot stays
/// visible.
#[derive(Debug, Clone)]
pub struct CoverageResult {
    pub value: f64,
    pub raw_value: f64,
    pub method: AnalysisMode,
    pub scheme: SelectionScheme,
    pub role: Role,
    pub n1: usize,
    pub n2: usize,
    pub warning: Option<String>,
}

pub(crate) fn finish(
    cfg: &NetworkConfig,
    role: Role,
    method: AnalysisMode,
    raw: f64,
    warning: Option<String>,
) -> CoverageResult {
    CoverageResult {
        value: raw.clamp(0.0, 1.0),
        raw_value: raw,
        method,
        scheme: cfg.scheme,
        role,
        n1: cfg.quad.n1,
        n2: cfg.quad.n2,
        warning,
    }
}

/// Conditional coverage kernel at distance r: probability that the serving
/// fading power clears tau (I + noise) r^alpha / (beta M C), with the
/// Nakagami tail opened by the tight exponential upper bound and the
/// interference averaged through the Laplace transform:
/// sum_{n=1}^{N} (-1)^{n+1} C(N,n) exp(-n psi tau r^alpha noise / (beta M C))
/// L_I(n psi tau r^alpha / (beta M C)).
pub fn theta_kernel(
    r: f64,
    tau: f64,
    beta: f64,
    branch: Branch,
    cfg: &NetworkConfig,
    lap: &LaplaceEvaluator,
) -> f64 {
    assert!(r >= 0.0 && tau >= 0.0);
    if tau == 0.0 {
        return 1.0;
    }
    assert!(beta > 0.0, "theta kernel requires a positive effective coefficient");
    let (shape, alpha, c) = match branch {
        Branch::Los => (cfg.nakagami_los, cfg.alpha_los, cfg.c_los),
        Branch::Nlos => (cfg.nakagami_nlos, cfg.alpha_nlos, cfg.c_nlos),
    };
    let psi = alzer_psi(shape);
    let u = psi * tau * r.powf(alpha) / (beta * f64::from(cfg.antennas) * c);
    // Alternating binomial sum under compensated (Neumaier) accumulation.
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for n in 1..=shape {
        let nf = f64::from(n);
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        let term = sign
            * binomial(u64::from(shape), u64::from(n))
            * (-nf * u * cfg.noise).exp()
            * lap.eval(nf * u);
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

/// Shared 1-D engine: integrate theta against a distance weight over the
/// LOS disc and the truncated NLOS tail.
fn branch_split_integral(
    cfg: &NetworkConfig,
    lap: &LaplaceEvaluator,
    tau: f64,
    beta: f64,
    weight: &dyn Fn(f64) -> f64,
) -> f64 {
    let rmax = cfg.r_max();
    let tol = cfg.quad.abs_tol;
    let los_hi = cfg.r_los.min(rmax);
    let los = quad::integrate(
        |r| theta_kernel(r, tau, beta, Branch::Los, cfg, lap) * weight(r),
        0.0,
        los_hi,
        tol,
    );
    let nlos = quad::integrate(
        |r| theta_kernel(r, tau, beta, Branch::Nlos, cfg, lap) * weight(r),
        cfg.r_los,
        rmax,
        tol,
    );
    los + nlos
}

/// Far-user beam average: order-n2 Chebyshev expectation over the serving
/// beam offset, with nulls of the Fejér kernel short-circuited.
fn beam_averaged<F: Fn(f64) -> f64>(cfg: &NetworkConfig, tau: f64, body: F) -> f64 {
    let rule = chebyshev_nodes(cfg.quad.n2);
    rule.integrate_unit(|g| {
        let gf = fejer_gain(g, cfg.antennas);
        if tau > 0.0 && gf == 0.0 {
            return 0.0;
        }
        body(gf)
    })
}

fn near_rank(cfg: &NetworkConfig) -> usize {
    cfg.near_index()
        .expect("scheme does not fix the near-user rank; use the RNFF path")
}

fn far_rank(cfg: &NetworkConfig) -> usize {
    cfg.far_index()
        .expect("scheme does not fix the far-user rank; use the FNRF path")
}

/// Marginal density weight of the far partner's distance under a fixed near
/// rank k: Rayleigh density times the partial mass
/// H_k(r) = (2K)!/((k-1)!(2K-k)!) sum_w (-1)^{k-1-w} C(k-1,w)
/// (1 - exp(-(2K-1-w) r^2/(2 sigma^2))) / (2K-1-w),
/// obtained by integrating the ordered density of r_k against the truncated
/// Rayleigh law of the partner.
fn random_far_weight(cfg: &NetworkConfig, k: usize) -> impl Fn(f64) -> f64 + '_ {
    let users = cfg.users();
    let sigma2 = cfg.sigma * cfg.sigma;
    let prefactor = order_prefactor(k, cfg.pairs);
    move |r: f64| {
        let mut acc = 0.0;
        for w in 0..k {
            let sign = if (k - 1 - w) % 2 == 0 { 1.0 } else { -1.0 };
            let c = (users - 1 - w) as f64;
            acc += sign * binomial((k - 1) as u64, w as u64)
                * (-(-c * r * r / (2.0 * sigma2)).exp_m1())
                / c;
        }
        rayleigh_pdf(r, cfg.sigma) * prefactor * acc
    }
}

fn near_fnrf_value(cfg: &NetworkConfig, lap: &LaplaceEvaluator) -> f64 {
    let k = near_rank(cfg);
    let (tau, beta) = cfg.near_kernel();
    branch_split_integral(cfg, lap, tau, beta, &|r| {
        ordered_pdf(k, r, cfg.pairs, cfg.sigma)
    })
}

fn far_fnrf_value(cfg: &NetworkConfig, lap: &LaplaceEvaluator) -> f64 {
    let k = near_rank(cfg);
    let margin = cfg.feasibility_margin();
    let tau = cfg.tau_far;
    let weight = random_far_weight(cfg, k);
    beam_averaged(cfg, tau, |gf| {
        let beta = if tau == 0.0 { 1.0 } else { margin * gf };
        branch_split_integral(cfg, lap, tau, beta, &weight)
    })
}

fn near_rnff_value(cfg: &NetworkConfig, lap: &LaplaceEvaluator) -> f64 {
    let j = far_rank(cfg);
    let (tau, beta) = cfg.near_kernel();
    let rmax = cfg.r_max();
    let tol = cfg.quad.abs_tol;
    quad::integrate(
        |rj| {
            let split = rj.min(cfg.r_los);
            let inner_los = quad::integrate(
                |rk| theta_kernel(rk, tau, beta, Branch::Los, cfg, lap) * rayleigh_pdf(rk, cfg.sigma),
                0.0,
                split,
                tol,
            );
            let inner_nlos = quad::integrate(
                |rk| {
                    theta_kernel(rk, tau, beta, Branch::Nlos, cfg, lap)
                        * rayleigh_pdf(rk, cfg.sigma)
                },
                cfg.r_los,
                rj,
                tol,
            );
            ordered_pdf(j, rj, cfg.pairs, cfg.sigma) * (inner_los + inner_nlos)
                / rayleigh_cdf(rj, cfg.sigma)
        },
        0.0,
        rmax,
        tol,
    )
}

fn far_rnff_value(cfg: &NetworkConfig, lap: &LaplaceEvaluator) -> f64 {
    let j = far_rank(cfg);
    let margin = cfg.feasibility_margin();
    let tau = cfg.tau_far;
    beam_averaged(cfg, tau, |gf| {
        let beta = if tau == 0.0 { 1.0 } else { margin * gf };
        branch_split_integral(cfg, lap, tau, beta, &|r| {
            ordered_pdf(j, r, cfg.pairs, cfg.sigma)
        })
    })
}

fn laplace_for(cfg: &NetworkConfig, mode: AnalysisMode) -> LaplaceEvaluator {
    match mode {
        AnalysisMode::Theorem => LaplaceEvaluator::new(cfg, LaplaceMode::Full),
        AnalysisMode::Special1 => LaplaceEvaluator::new(cfg, LaplaceMode::SpecialCase1),
        _ => unreachable!("closed forms and MC do not route through the theorem engine"),
    }
}

/// Near-user coverage for schemes that fix the near rank (also the FNFF
/// near-user path, which is the same dispatch by construction).
pub fn coverage_near_fnrf(cfg: &NetworkConfig) -> CoverageResult {
    let lap = laplace_for(cfg, AnalysisMode::Theorem);
    finish(cfg, Role::Near, AnalysisMode::Theorem, near_fnrf_value(cfg, &lap), None)
}

/// Far-user coverage under a fixed near rank with the partner drawn
/// uniformly among farther users.
pub fn coverage_far_fnrf(cfg: &NetworkConfig) -> CoverageResult {
    let lap = laplace_for(cfg, AnalysisMode::Theorem);
    finish(cfg, Role::Far, AnalysisMode::Theorem, far_fnrf_value(cfg, &lap), None)
}

/// Near-user coverage under a fixed far rank with the near partner drawn
/// uniformly among nearer users.
pub fn coverage_near_rnff(cfg: &NetworkConfig) -> CoverageResult {
    let lap = laplace_for(cfg, AnalysisMode::Theorem);
    finish(cfg, Role::Near, AnalysisMode::Theorem, near_rnff_value(cfg, &lap), None)
}

/// Far-user coverage at a fixed far rank (also the FNFF far-user path).
pub fn coverage_far_rnff(cfg: &NetworkConfig) -> CoverageResult {
    let lap = laplace_for(cfg, AnalysisMode::Theorem);
    finish(cfg, Role::Far, AnalysisMode::Theorem, far_rnff_value(cfg, &lap), None)
}

/// Scheme-and-mode dispatch. FNFF composes: its near user follows the
/// fixed-near path with rank k, its far user the fixed-far path with rank j.
pub fn coverage(cfg: &NetworkConfig, role: Role, mode: AnalysisMode) -> CoverageResult {
    assert!(
        mode != AnalysisMode::MonteCarlo,
        "empirical estimates come from the montecarlo module"
    );
    if mode == AnalysisMode::ClosedForm {
        return match (cfg.scheme, role) {
            (SelectionScheme::Fnrf { .. } | SelectionScheme::Fnff { .. }, Role::Near) => {
                super::closed_form::coverage_near_fnrf_closed(cfg)
            }
            (SelectionScheme::Fnrf { .. }, Role::Far) => {
                super::closed_form::coverage_far_fnrf_closed(cfg)
            }
            (SelectionScheme::Rnff { .. }, Role::Near) => {
                super::closed_form::coverage_near_rnff_closed(cfg)
            }
            (SelectionScheme::Rnff { .. } | SelectionScheme::Fnff { .. }, Role::Far) => {
                super::closed_form::coverage_far_rnff_closed(cfg)
            }
        };
    }
    let lap = laplace_for(cfg, mode);
    let raw = match (cfg.scheme, role) {
        (SelectionScheme::Fnrf { .. } | SelectionScheme::Fnff { .. }, Role::Near) => {
            near_fnrf_value(cfg, &lap)
        }
        (SelectionScheme::Fnrf { .. }, Role::Far) => far_fnrf_value(cfg, &lap),
        (SelectionScheme::Rnff { .. }, Role::Near) => near_rnff_value(cfg, &lap),
        (SelectionScheme::Rnff { .. } | SelectionScheme::Fnff { .. }, Role::Far) => {
            far_rnff_value(cfg, &lap)
        }
    };
    finish(cfg, role, mode, raw, None)
}

/// Coverage of one pair member receiving full power with no partner signal:
/// the orthogonal-access baseline, which reuses the paired coverage
/// integrals with the power split replaced by 1. The serving beam still
/// points at the near member, so the near role sees the aligned gain M
/// while the far role keeps its beam-offset average; the distance
/// distribution follows the configured pairing scheme and role.
pub fn coverage_single_user(cfg: &NetworkConfig, role: Role, tau: f64) -> CoverageResult {
    assert!(tau >= 0.0);
    let lap = LaplaceEvaluator::new(cfg, LaplaceMode::Full);
    let raw = match (cfg.scheme, role) {
        (SelectionScheme::Fnrf { k } | SelectionScheme::Fnff { k, .. }, Role::Near) => {
            branch_split_integral(cfg, &lap, tau, 1.0, &|r| {
                ordered_pdf(k, r, cfg.pairs, cfg.sigma)
            })
        }
        (SelectionScheme::Fnrf { k }, Role::Far) => {
            let weight = random_far_weight(cfg, k);
            beam_averaged(cfg, tau, |gf| {
                let beta = if tau == 0.0 { 1.0 } else { gf };
                branch_split_integral(cfg, &lap, tau, beta, &weight)
            })
        }
        (SelectionScheme::Rnff { .. }, Role::Near) => {
            let rmax = cfg.r_max();
            let tol = cfg.quad.abs_tol;
            let j = far_rank(cfg);
            quad::integrate(
                |rj| {
                    let split = rj.min(cfg.r_los);
                    let inner_los = quad::integrate(
                        |rk| {
                            theta_kernel(rk, tau, 1.0, Branch::Los, cfg, &lap)
                                * rayleigh_pdf(rk, cfg.sigma)
                        },
                        0.0,
                        split,
                        tol,
                    );
                    let inner_nlos = quad::integrate(
                        |rk| {
                            theta_kernel(rk, tau, 1.0, Branch::Nlos, cfg, &lap)
                                * rayleigh_pdf(rk, cfg.sigma)
                        },
                        cfg.r_los,
                        rj,
                        tol,
                    );
                    ordered_pdf(j, rj, cfg.pairs, cfg.sigma) * (inner_los + inner_nlos)
                        / rayleigh_cdf(rj, cfg.sigma)
                },
                0.0,
                rmax,
                tol,
            )
        }
        (SelectionScheme::Rnff { j } | SelectionScheme::Fnff { j, .. }, Role::Far) => {
            beam_averaged(cfg, tau, |gf| {
                let beta = if tau == 0.0 { 1.0 } else { gf };
                branch_split_integral(cfg, &lap, tau, beta, &|r| {
                    ordered_pdf(j, r, cfg.pairs, cfg.sigma)
                })
            })
        }
    };
    finish(cfg, role, AnalysisMode::Theorem, raw, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_at_zero_threshold_is_one() {
        let cfg = NetworkConfig::defaults();
        let lap = LaplaceEvaluator::new(&cfg, LaplaceMode::Full);
        for &r in &[0.0, 5.0, 50.0, 200.0] {
            assert_eq!(theta_kernel(r, 0.0, 1.0, Branch::Los, &cfg, &lap), 1.0);
        }
    }

    #[test]
    fn theta_binomial_identity_at_origin() {
        // r = 0 makes every exponential and Laplace factor 1, leaving the
        // alternating binomial sum, which is exactly 1.
        let cfg = NetworkConfig::defaults();
        let lap = LaplaceEvaluator::new(&cfg, LaplaceMode::Full);
        let v = theta_kernel(0.0, 0.7, 0.3, Branch::Los, &cfg, &lap);
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn certain_coverage_at_zero_thresholds() {
        let mut cfg = NetworkConfig::defaults();
        cfg.tau_near = 0.0;
        cfg.tau_far = 0.0;
        cfg.validate().unwrap();
        for role in [Role::Near, Role::Far] {
            let p = coverage(&cfg, role, AnalysisMode::Theorem);
            assert!(
                (p.value - 1.0).abs() < 1e-9,
                "{role:?}: {}",
                p.value
            );
        }
        let mut rnff = cfg.clone();
        rnff.scheme = SelectionScheme::Rnff { j: rnff.users() };
        for role in [Role::Near, Role::Far] {
            let p = coverage(&rnff, role, AnalysisMode::Theorem);
            assert!((p.value - 1.0).abs() < 1e-9, "{role:?}: {}", p.value);
        }
    }

    #[test]
    fn fnff_composition_is_bit_exact() {
        let mut fnrf = NetworkConfig::defaults();
        fnrf.scheme = SelectionScheme::Fnrf { k: 1 };
        let mut rnff = fnrf.clone();
        rnff.scheme = SelectionScheme::Rnff { j: 4 };
        let mut fnff = fnrf.clone();
        fnff.scheme = SelectionScheme::Fnff { k: 1, j: 4 };
        let near_a = coverage(&fnrf, Role::Near, AnalysisMode::Theorem).raw_value;
        let near_b = coverage(&fnff, Role::Near, AnalysisMode::Theorem).raw_value;
        assert_eq!(near_a.to_bits(), near_b.to_bits());
        let far_a = coverage(&rnff, Role::Far, AnalysisMode::Theorem).raw_value;
        let far_b = coverage(&fnff, Role::Far, AnalysisMode::Theorem).raw_value;
        assert_eq!(far_a.to_bits(), far_b.to_bits());
    }
}
