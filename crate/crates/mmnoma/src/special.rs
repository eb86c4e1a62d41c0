//! Numerical kernels behind the analytical formulas: Gauss hypergeometric
//! 2F1, digamma, Gauss-Chebyshev quadrature, and the normalized Fejér
//! kernel of a uniform linear array.

use statrs::function::gamma::ln_gamma;
use std::f64::consts::PI;

const SERIES_TOL: f64 = 1e-14;
const MAX_TERMS: usize = 100_000;

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.floor()
}

/// Direct power series sum_n (a)_n (b)_n / ((c)_n n!) z^n. Returns None if
/// the term cap is reached before the relative tolerance; terminating series
/// (a or b a non-positive integer) exit early when the running term hits 0.
fn series_2f1(a: f64, b: f64, c: f64, z: f64) -> Option<f64> {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / (c + nf) * z / (nf + 1.0);
        if term == 0.0 {
            return Some(sum);
        }
        sum += term;
        if term.abs() <= SERIES_TOL * sum.abs().max(1.0) {
            return Some(sum);
        }
    }
    None
}

/// ln|Gamma(x)| and the sign of Gamma(x). Negative non-integer arguments go
/// through the reflection formula Gamma(x) = pi / (sin(pi x) Gamma(1-x)).
pub(crate) fn ln_gamma_signed(x: f64) -> (f64, f64) {
    if x > 0.0 {
        (ln_gamma(x), 1.0)
    } else {
        assert!(
            !is_nonpositive_integer(x),
            "gamma pole at non-positive integer {x}"
        );
        let s = (PI * x).sin();
        (PI.ln() - s.abs().ln() - ln_gamma(1.0 - x), s.signum())
    }
}

/// Connection formula in 1/z for large negative argument (valid when b - a
/// is not an integer):
/// 2F1(a,b;c;z) = G(c)G(b-a)/(G(b)G(c-a)) (-z)^{-a} 2F1(a,a-c+1;a-b+1;1/z)
///             + G(c)G(a-b)/(G(a)G(c-b)) (-z)^{-b} 2F1(b,b-c+1;b-a+1;1/z).
fn inverse_argument_2f1(a: f64, b: f64, c: f64, z: f64) -> f64 {
    let w = 1.0 / z;
    let (lc, sc) = ln_gamma_signed(c);
    let (lba, sba) = ln_gamma_signed(b - a);
    let (lb, sb) = ln_gamma_signed(b);
    let (lca, sca) = ln_gamma_signed(c - a);
    let (lab, sab) = ln_gamma_signed(a - b);
    let (la, sa) = ln_gamma_signed(a);
    let (lcb, scb) = ln_gamma_signed(c - b);
    let coef1 = sc * sba * sb * sca * (lc + lba - lb - lca).exp();
    let coef2 = sc * sab * sa * scb * (lc + lab - la - lcb).exp();
    let f1 = series_2f1(a, a - c + 1.0, a - b + 1.0, w)
        .expect("2F1 inverse-argument series (first branch) did not converge");
    let f2 = series_2f1(b, b - c + 1.0, b - a + 1.0, w)
        .expect("2F1 inverse-argument series (second branch) did not converge");
    coef1 * (-z).powf(-a) * f1 + coef2 * (-z).powf(-b) * f2
}

/// Gauss hypergeometric function 2F1(a, b; c; z) for real arguments with
/// z < 1.
///
/// Evaluation strategy: direct series on [0, 1); terminating series whenever
/// a or b is a non-positive integer; Pfaff transformation z -> z/(z-1) for
/// moderately negative z; connection formula in 1/z for z < -3 when b - a is
/// not an integer (the Pfaff series tail decays only polynomially there),
/// falling back to the Pfaff series otherwise.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64) -> f64 {
    assert!(z < 1.0, "gauss_2f1 domain requires z < 1, got {z}");
    assert!(
        !is_nonpositive_integer(c),
        "gauss_2f1 undefined for non-positive integer c = {c}"
    );
    if z == 0.0 {
        return 1.0;
    }
    if is_nonpositive_integer(a) || is_nonpositive_integer(b) {
        return series_2f1(a, b, c, z).expect("terminating 2F1 series cannot fail");
    }
    if z > 0.0 {
        return series_2f1(a, b, c, z).expect("2F1 series did not converge on (0,1)");
    }
    if z >= -3.0 {
        let w = z / (z - 1.0);
        let f = series_2f1(a, c - b, c, w).expect("2F1 Pfaff series did not converge");
        return (1.0 - z).powf(-a) * f;
    }
    let ba = b - a;
    if (ba - ba.round()).abs() > 1e-8 {
        inverse_argument_2f1(a, b, c, z)
    } else {
        let w = z / (z - 1.0);
        let f = series_2f1(a, c - b, c, w).expect("2F1 Pfaff series did not converge");
        (1.0 - z).powf(-a) * f
    }
}

/// Digamma function psi(x) for x > 0: recurrence up to x >= 10, then the
/// asymptotic series with Bernoulli coefficients through x^{-10}; the first
/// dropped term is below 3e-14 at the shift point.
pub fn digamma(x: f64) -> f64 {
    assert!(x > 0.0, "digamma domain requires x > 0, got {x}");
    let mut x = x;
    let mut acc = 0.0;
    while x < 10.0 {
        acc -= 1.0 / x;
        x += 1.0;
    }
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    // psi(x) ~ ln x - 1/(2x) - sum B_{2n}/(2n x^{2n}).
    let tail = inv2
        * (1.0 / 12.0
            - inv2
                * (1.0 / 120.0
                    - inv2 * (1.0 / 252.0 - inv2 * (1.0 / 240.0 - inv2 * (1.0 / 132.0)))));
    acc + x.ln() - 0.5 * inv - tail
}

/// Nakagami tail-bound scaling factor psi_N = N (N!)^{-1/N} from the tight
/// upper bound on the normalized gamma CCDF.
pub fn alzer_psi(n: u32) -> f64 {
    assert!(n >= 1);
    let nf = n as f64;
    nf * (-ln_gamma(nf + 1.0) / nf).exp()
}

/// Binomial coefficient C(n, k) as a float.
pub fn binomial(n: u64, k: u64) -> f64 {
    statrs::function::factorial::binomial(n, k)
}

/// Gauss-Chebyshev quadrature rule of the first kind.
///
/// Nodes are zeta_i = cos((2i-1) pi / (2n)); the companion weight for an
/// ordinary (unweighted) integral is sqrt(1 - zeta_i^2).
#[derive(Debug, Clone, PartialEq)]
pub struct ChebyshevRule {
    pub n: usize,
    pub nodes: Vec<f64>,
}

/// Build the order-n rule.
pub fn chebyshev_nodes(n: usize) -> ChebyshevRule {
    assert!(n >= 1, "Chebyshev order must be at least 1");
    let nodes = (1..=n)
        .map(|i| ((2 * i - 1) as f64 * PI / (2.0 * n as f64)).cos())
        .collect();
    ChebyshevRule { n, nodes }
}

impl ChebyshevRule {
    /// Approximate integral of f over [-1, 1]: (pi/n) sum f(zeta) sqrt(1-zeta^2).
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        let scale = PI / self.n as f64;
        let mut acc = 0.0;
        for &z in &self.nodes {
            acc += f(z) * (1.0 - z * z).sqrt();
        }
        scale * acc
    }

    /// Approximate integral of f over [0, 1] via the node map g = (zeta+1)/2:
    /// (pi/(2n)) sum f((zeta+1)/2) sqrt(1-zeta^2).
    pub fn integrate_unit<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        let scale = PI / (2.0 * self.n as f64);
        let mut acc = 0.0;
        for &z in &self.nodes {
            acc += f(0.5 * (z + 1.0)) * (1.0 - z * z).sqrt();
        }
        scale * acc
    }
}

/// Normalized Fejér kernel G_F(delta) = sin^2(pi M delta / 2) /
/// (M^2 sin^2(pi delta / 2)) of a ULA with M elements.
///
/// Period 2 in delta; the removable singularity at even integers evaluates
/// to the main-lobe peak 1. The offset is wrapped to [-1, 1] before the
/// singularity guard so near-even arguments from either side land on the
/// same branch.
pub fn fejer_gain(delta: f64, m: u32) -> f64 {
    assert!(m >= 1);
    let mf = f64::from(m);
    let u = delta - 2.0 * (delta / 2.0).round();
    let den = (PI * u / 2.0).sin();
    if den.abs() < 1e-9 {
        return 1.0;
    }
    let num = (PI * mf * u / 2.0).sin();
    let g = (num * num) / (mf * mf * den * den);
    g.clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fejer_peak_null_and_period() {
        for m in [1u32, 2, 7, 10, 64] {
            assert_eq!(fejer_gain(0.0, m), 1.0);
            assert_eq!(fejer_gain(2.0, m), 1.0);
            assert_eq!(fejer_gain(-4.0, m), 1.0);
        }
        assert!(fejer_gain(0.2, 10) < 1e-28, "first null at delta = 2/M");
        assert!(fejer_gain(1.0, 10) < 1e-30, "even M vanishes at delta = 1");
        let odd = fejer_gain(1.0, 9);
        assert!((odd - 1.0 / 81.0).abs() < 1e-15, "odd M gives 1/M^2 at delta = 1");
        for &d in &[0.03, 0.4, -0.77, 1.3] {
            let a = fejer_gain(d, 10);
            let b = fejer_gain(d + 2.0, 10);
            assert!((a - b).abs() < 1e-12, "period-2 violated at {d}");
        }
    }

    #[test]
    fn chebyshev_semicircle_integral() {
        // Integral of sqrt(1-x^2) over [-1,1] is pi/2; the rule is exact
        // once 2n-1 covers the degree-2 weighted integrand, so from n=2 up.
        for n in [2usize, 3, 8, 64] {
            let rule = chebyshev_nodes(n);
            let got = rule.integrate(|x| (1.0 - x * x).sqrt());
            assert!((got - PI / 2.0).abs() < 1e-12, "n={n} got {got}");
        }
    }

    #[test]
    fn alzer_psi_reference_values() {
        assert!((alzer_psi(1) - 1.0).abs() < 1e-15);
        // N=3: 3 * 6^{-1/3}.
        assert!((alzer_psi(3) - 3.0 * 6f64.powf(-1.0 / 3.0)).abs() < 1e-14);
    }

    #[test]
    fn digamma_basics() {
        const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
        assert!((digamma(1.0) + EULER_GAMMA).abs() < 1e-12);
        assert!((digamma(2.0) - (1.0 - EULER_GAMMA)).abs() < 1e-12);
        assert!((digamma(0.5) + EULER_GAMMA + 2.0 * 2f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn hypergeometric_log_identity() {
        // 2F1(1,1;2;z) = -ln(1-z)/z.
        for &z in &[0.5, 0.3, -0.7, -5.0, -200.0] {
            let got = gauss_2f1(1.0, 1.0, 2.0, z);
            let expect = -(1.0 - z).ln() / z;
            assert!(
                (got - expect).abs() <= 1e-12 * expect.abs().max(1.0),
                "z={z}: got {got}, expect {expect}"
            );
        }
    }
}
