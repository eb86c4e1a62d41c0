//! Laplace transform of the inter-cluster interference at a typical-cluster
//! user, in three modes: the full two-branch model, the LOS-only
//! simplification, and the sparse-network unity transform.
//!
//! The transform is L_I(s) = exp(-pi lambda_c R_L^2 E_g[G(s, g)]) where the
//! beam-offset expectation runs over g in (0, 1) by symmetry of the Fejér
//! kernel and G splits into an NLOS part rho_N - 1 and a LOS part
//! 1 - rho_L. The expectation is evaluated on an order-n1 Gauss-Chebyshev
//! rule with nodes mapped by g = (zeta + 1)/2.

use crate::config::NetworkConfig;
use crate::special::{chebyshev_nodes, fejer_gain, gauss_2f1, ln_gamma_signed, ChebyshevRule};
use std::f64::consts::PI;

/// Interference model behind the transform.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LaplaceMode {
    /// Both LOS and NLOS interferers.
    Full,
    /// NLOS interference ignored; requires alpha_los = 2.
    SpecialCase1,
    /// Sparse network: no interference, L_I identically 1.
    Unity,
}

/// LOS interference kernel
/// rho_L(v) = (2 v^N / (alpha N + 2)) 2F1(N, N + 2/alpha; N + 2/alpha + 1; -v),
/// increasing from 0 to 1 on v in (0, inf). The LOS exclusion integral over
/// the disc satisfies J_L = (R_L^2 / 2)(1 - rho_L(v)).
pub(crate) fn rho_los(v: f64, n: u32, alpha: f64) -> f64 {
    assert!(v >= 0.0 && n >= 1 && alpha >= 2.0);
    if v == 0.0 {
        return 0.0;
    }
    if (alpha - 2.0).abs() < 1e-9 {
        return rho_los_alpha2(v, n);
    }
    let nf = f64::from(n);
    let e = 2.0 / alpha;
    if v <= 3.0 {
        return gauss_2f1(nf, nf + e, nf + e + 1.0, -v) * 2.0 * v.powi(n as i32)
            / (alpha * nf + 2.0);
    }
    if v > 1e60 {
        return 1.0;
    }
    // Inverse-argument connection with the v^N growth cancelled analytically:
    // rho_L = (2/(alpha N + 2)) [C1 2F1(N, -2/a; 1-2/a; -1/v) + C2 v^{-2/a}],
    // the second hypergeometric series collapsing to 1 because b - c + 1 = 0.
    let b = nf + e;
    let c = b + 1.0;
    let (lc, sc) = ln_gamma_signed(c);
    let (lba, sba) = ln_gamma_signed(e);
    let (lb, sb) = ln_gamma_signed(b);
    let (lca, sca) = ln_gamma_signed(e + 1.0);
    let c1 = sc * sba * sb * sca * (lc + lba - lb - lca).exp();
    let (lab, sab) = ln_gamma_signed(-e);
    let (la, sa) = ln_gamma_signed(nf);
    let c2 = sc * sab * sa * (lc + lab - la).exp();
    let f1 = gauss_2f1(nf, -e, 1.0 - e, -1.0 / v);
    (2.0 / (alpha * nf + 2.0)) * (c1 * f1 + c2 * v.powf(-e))
}

/// Exact alpha_los = 2 reduction of rho_L via the finite LOS correction
/// polynomial: rho_L(v) = -F(1/v) with
/// F(w) = -(1+w)^{-(N-1)} - N w (sum_{m=1}^{N-1} 1/((1+w)^{N-m} (N-m)) - ln(1 + 1/w)).
fn rho_los_alpha2(v: f64, n: u32) -> f64 {
    let w = 1.0 / v;
    let nf = f64::from(n);
    let mut sum = 0.0;
    for m in 1..n {
        let p = n - m;
        sum += 1.0 / ((1.0 + w).powi(p as i32) * f64::from(p));
    }
    let f = -(1.0 + w).powi(-(n as i32 - 1)) - nf * w * (sum - (1.0 / w).ln_1p());
    -f
}

/// NLOS interference kernel rho_N(x) = 2F1(-2/alpha, N; 1 - 2/alpha; -x),
/// increasing from 1; the NLOS inclusion integral over the plane beyond the
/// disc satisfies J_N = (R_L^2 / 2)(rho_N(x) - 1).
pub(crate) fn rho_nlos(x: f64, n: u32, alpha: f64) -> f64 {
    assert!(x >= 0.0 && n >= 1 && alpha > 2.0);
    if x == 0.0 {
        return 1.0;
    }
    let e = 2.0 / alpha;
    gauss_2f1(-e, f64::from(n), 1.0 - e, -x)
}

/// Laplace transform evaluator bound to one configuration and Chebyshev
/// order. Pure and reentrant; cheap to construct.
#[derive(Debug, Clone)]
pub struct LaplaceEvaluator {
    cfg: NetworkConfig,
    mode: LaplaceMode,
    rule: ChebyshevRule,
}

impl LaplaceEvaluator {
    /// Evaluator at the configured order n1.
    pub fn new(cfg: &NetworkConfig, mode: LaplaceMode) -> Self {
        Self::with_order(cfg, mode, cfg.quad.n1)
    }

    /// Evaluator with an explicit Chebyshev order.
    pub fn with_order(cfg: &NetworkConfig, mode: LaplaceMode, n1: usize) -> Self {
        if mode == LaplaceMode::SpecialCase1 {
            assert!(
                (cfg.alpha_los - 2.0).abs() < 1e-9,
                "LOS-only Laplace mode requires alpha_los = 2, got {}",
                cfg.alpha_los
            );
        }
        Self {
            cfg: cfg.clone(),
            mode,
            rule: chebyshev_nodes(n1),
        }
    }

    pub fn mode(&self) -> LaplaceMode {
        self.mode
    }

    pub fn order(&self) -> usize {
        self.rule.n
    }

    /// Beam-offset integrand G(s, g): NLOS part plus LOS part, zero when the
    /// offset lands on a kernel null or s = 0.
    fn beam_integrand(&self, s: f64, g: f64) -> f64 {
        let cfg = &self.cfg;
        let gf = fejer_gain(g, cfg.antennas);
        let smg = s * f64::from(cfg.antennas) * gf;
        if smg == 0.0 {
            return 0.0;
        }
        let v = f64::from(cfg.nakagami_los) * cfg.r_los.powf(cfg.alpha_los) / (smg * cfg.c_los);
        let los = 1.0 - rho_los(v, cfg.nakagami_los, cfg.alpha_los);
        match self.mode {
            LaplaceMode::SpecialCase1 => los,
            LaplaceMode::Full => {
                let x = smg * cfg.c_nlos
                    / (f64::from(cfg.nakagami_nlos) * cfg.r_los.powf(cfg.alpha_nlos));
                rho_nlos(x, cfg.nakagami_nlos, cfg.alpha_nlos) - 1.0 + los
            }
            LaplaceMode::Unity => unreachable!("unity mode short-circuits before integration"),
        }
    }

    /// L_I(s) = E[exp(-s I)].
    pub fn eval(&self, s: f64) -> f64 {
        assert!(s >= 0.0, "Laplace argument must be nonnegative, got {s}");
        if self.mode == LaplaceMode::Unity || s == 0.0 || self.cfg.lambda_c == 0.0 {
            return 1.0;
        }
        let coeff = PI * self.cfg.lambda_c * self.cfg.r_los * self.cfg.r_los;
        let exponent = coeff * self.rule.integrate_unit(|g| self.beam_integrand(s, g));
        (-exponent).exp()
    }
}

/// Full-model transform at the configured order.
pub fn laplace_full(s: f64, cfg: &NetworkConfig) -> f64 {
    LaplaceEvaluator::new(cfg, LaplaceMode::Full).eval(s)
}

/// LOS-only transform (alpha_los = 2 required) at the configured order.
pub fn laplace_special1(s: f64, cfg: &NetworkConfig) -> f64 {
    LaplaceEvaluator::new(cfg, LaplaceMode::SpecialCase1).eval(s)
}
