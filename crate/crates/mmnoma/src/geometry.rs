//! Distance distributions of the clustered topology and sampling of network
//! realizations for the Monte Carlo cross-check.
//!
//! The typical base station sits at the origin with exactly 2K users whose
//! offsets are N(0, sigma^2 I2); interfering base stations form a
//! homogeneous PPP of density lambda_c over a finite disc window.

use crate::config::NetworkConfig;
use crate::special::binomial;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, Normal, Poisson};
use statrs::function::factorial::ln_factorial;
use std::f64::consts::PI;
use std::fmt::Write as _;

/// Rayleigh density (v/sigma^2) exp(-v^2/(2 sigma^2)) of an unordered
/// user-to-base-station distance.
pub fn rayleigh_pdf(v: f64, sigma: f64) -> f64 {
    assert!(v > 0.0 && sigma > 0.0, "rayleigh_pdf requires positive arguments");
    (v / (sigma * sigma)) * (-v * v / (2.0 * sigma * sigma)).exp()
}

/// Rayleigh distribution function 1 - exp(-v^2/(2 sigma^2)).
pub fn rayleigh_cdf(v: f64, sigma: f64) -> f64 {
    assert!(v >= 0.0 && sigma > 0.0, "rayleigh_cdf requires v >= 0 and positive sigma");
    -(-v * v / (2.0 * sigma * sigma)).exp_m1()
}

/// Multinomial prefactor (2K)! / ((i-1)! (2K-i)!) of the i-th order
/// statistic out of 2K draws.
pub fn order_prefactor(i: usize, pairs: usize) -> f64 {
    let n = 2 * pairs;
    assert!(1 <= i && i <= n, "order index {i} out of range for 2K = {n}");
    (ln_factorial(n as u64) - ln_factorial((i - 1) as u64) - ln_factorial((n - i) as u64)).exp()
}

/// Density of the i-th nearest of the 2K cluster distances, expanded as an
/// alternating exponential sum:
/// (2K)!/((i-1)!(2K-i)!) (r/sigma^2) sum_{w=0}^{i-1} (-1)^{i-1-w} C(i-1,w)
/// exp(-(2K-w) r^2 / (2 sigma^2)).
pub fn ordered_pdf(i: usize, r: f64, pairs: usize, sigma: f64) -> f64 {
    assert!(r > 0.0 && sigma > 0.0, "ordered_pdf requires positive r and sigma");
    let n = 2 * pairs;
    assert!(1 <= i && i <= n, "order index {i} out of range for 2K = {n}");
    let s2 = sigma * sigma;
    let mut acc = 0.0;
    for w in 0..i {
        let sign = if (i - 1 - w) % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign
            * binomial((i - 1) as u64, w as u64)
            * (-((n - w) as f64) * r * r / (2.0 * s2)).exp();
    }
    order_prefactor(i, pairs) * (r / s2) * acc
}

/// Distribution function of the i-th order statistic: at least i of the 2K
/// distances fall below r.
pub fn ordered_cdf(i: usize, r: f64, pairs: usize, sigma: f64) -> f64 {
    assert!(r >= 0.0 && sigma > 0.0);
    let n = 2 * pairs;
    assert!(1 <= i && i <= n, "order index {i} out of range for 2K = {n}");
    let p = rayleigh_cdf(r, sigma);
    let q = 1.0 - p;
    let mut acc = 0.0;
    for m in i..=n {
        acc += binomial(n as u64, m as u64) * p.powi(m as i32) * q.powi((n - m) as i32);
    }
    acc.clamp(0.0, 1.0)
}

/// Density of the far partner's distance given the near user's distance
/// r_k: the partner is a uniformly chosen farther user, so its distance is
/// Rayleigh truncated to (r_k, inf). The truncated form
/// (r_j/sigma^2) exp((r_k^2 - r_j^2)/(2 sigma^2)) avoids the survival
/// probability, which rounds to zero past a few sigma.
pub fn conditional_far_pdf(r_j: f64, r_k: f64, sigma: f64) -> f64 {
    assert!(r_k > 0.0 && sigma > 0.0);
    if r_j <= r_k {
        return 0.0;
    }
    let s2 = sigma * sigma;
    (r_j / s2) * ((r_k * r_k - r_j * r_j) / (2.0 * s2)).exp()
}

/// Density of the near partner's distance given the far user's distance
/// r_j: Rayleigh truncated to (0, r_j).
pub fn conditional_near_pdf(r_k: f64, r_j: f64, sigma: f64) -> f64 {
    assert!(r_j > 0.0 && sigma > 0.0);
    if r_k <= 0.0 || r_k >= r_j {
        return 0.0;
    }
    rayleigh_pdf(r_k, sigma) / rayleigh_cdf(r_j, sigma)
}

/// Ordered-distance density as a value object (order index, pairs, sigma).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrderedDistancePdf {
    pub i: usize,
    pub pairs: usize,
    pub sigma: f64,
}

impl OrderedDistancePdf {
    pub fn new(i: usize, pairs: usize, sigma: f64) -> Self {
        assert!(1 <= i && i <= 2 * pairs && sigma > 0.0);
        Self { i, pairs, sigma }
    }

    pub fn pdf(&self, r: f64) -> f64 {
        ordered_pdf(self.i, r, self.pairs, self.sigma)
    }

    pub fn cdf(&self, r: f64) -> f64 {
        ordered_cdf(self.i, r, self.pairs, self.sigma)
    }
}

/// One sampled network state. Users are stored in draw order; `order` maps
/// distance rank (ascending) to user index.
#[derive(Debug, Clone)]
pub struct Realization {
    /// Interfering base stations; the typical one at the origin is implicit.
    pub bs_points: Vec<[f64; 2]>,
    /// Beam offset delta of each interfering base station, uniform on [-1, 1].
    pub interferer_beam_offsets: Vec<f64>,
    /// 2K Gaussian offsets of the typical-cluster users.
    pub offsets: Vec<[f64; 2]>,
    /// Beam coordinate of each user, uniform on [-1, 1]; the offset seen
    /// from interferer y is user_theta - interferer_beam_offsets[y], whose
    /// wrapped difference is again uniform on [-1, 1].
    pub user_theta: Vec<f64>,
    /// Distances of users to the origin, one per user index.
    pub user_distance: Vec<f64>,
    /// order[rank-1] = user index of the rank-th nearest user.
    pub order: Vec<usize>,
    /// Serving-link Nakagami power gain per user index; shape follows the
    /// LOS class of the user's own distance.
    pub serving_fade: Vec<f64>,
    /// Interfering-link power gains, user-major: entry u * bs_count + y.
    pub cross_fade: Vec<f64>,
}

impl Realization {
    /// Distance of the rank-th nearest user (1-based rank).
    pub fn distance_of_rank(&self, rank: usize) -> f64 {
        self.user_distance[self.order[rank - 1]]
    }

    /// User index of the rank-th nearest user (1-based rank).
    pub fn user_of_rank(&self, rank: usize) -> usize {
        self.order[rank - 1]
    }

    pub fn cross_fade_of(&self, user: usize, bs: usize) -> f64 {
        self.cross_fade[user * self.bs_points.len() + bs]
    }

    /// Line-oriented debug dump: positions, LOS flags, gains.
    pub fn dump(&self, r_los: f64) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "bs_count {}", self.bs_points.len());
        for (i, p) in self.bs_points.iter().enumerate() {
            let _ = writeln!(
                out,
                "bs {i} x {:.6} y {:.6} beam_offset {:.6}",
                p[0], p[1], self.interferer_beam_offsets[i]
            );
        }
        for (u, p) in self.offsets.iter().enumerate() {
            let d = self.user_distance[u];
            let _ = writeln!(
                out,
                "user {u} x {:.6} y {:.6} dist {:.6} los {} theta {:.6} fade {:.6}",
                p[0],
                p[1],
                d,
                if d < r_los { 1 } else { 0 },
                self.user_theta[u],
                self.serving_fade[u]
            );
        }
        let _ = writeln!(out, "rank_order {:?}", self.order);
        out
    }
}

/// Simulation window radius: large enough that the mean interference from
/// beyond it (NLOS, exponent alpha_N) is a negligible fraction of the
/// in-window mean at the reference densities.
pub fn default_window_radius(cfg: &NetworkConfig) -> f64 {
    let by_density = if cfg.lambda_c > 0.0 {
        10.0 / (PI * cfg.lambda_c).sqrt()
    } else {
        0.0
    };
    by_density.max(20.0 * cfg.r_los)
}

/// Nakagami shape of a link at distance d under the LOS-disc model. The
/// boundary d = R_L belongs to the NLOS branch.
pub fn nakagami_shape(cfg: &NetworkConfig, d: f64) -> u32 {
    if d < cfg.r_los {
        cfg.nakagami_los
    } else {
        cfg.nakagami_nlos
    }
}

fn sample_nakagami_power<R: Rng>(rng: &mut R, shape: u32) -> f64 {
    let n = f64::from(shape);
    Gamma::new(n, 1.0 / n)
        .expect("positive Nakagami shape")
        .sample(rng)
}

/// Draw one complete network realization. Deterministic in the seed: the
/// draw order is parent count, parent positions, parent beam offsets, user
/// offsets, user beam coordinates, serving fades, cross fades.
pub fn sample_realization(cfg: &NetworkConfig, window_radius: f64, rng_seed: u64) -> Realization {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let n_users = cfg.users();

    let mean = cfg.lambda_c * PI * window_radius * window_radius;
    let bs_count = if mean > 0.0 {
        Poisson::new(mean).expect("positive PPP mean").sample(&mut rng) as usize
    } else {
        0
    };
    let mut bs_points = Vec::with_capacity(bs_count);
    for _ in 0..bs_count {
        let r = window_radius * rng.gen::<f64>().sqrt();
        let th = rng.gen::<f64>() * 2.0 * PI;
        bs_points.push([r * th.cos(), r * th.sin()]);
    }
    let interferer_beam_offsets: Vec<f64> =
        (0..bs_count).map(|_| rng.gen_range(-1.0..1.0)).collect();

    let normal = Normal::new(0.0, cfg.sigma).expect("positive sigma");
    let offsets: Vec<[f64; 2]> = (0..n_users)
        .map(|_| [normal.sample(&mut rng), normal.sample(&mut rng)])
        .collect();
    let user_theta: Vec<f64> = (0..n_users).map(|_| rng.gen_range(-1.0..1.0)).collect();

    let user_distance: Vec<f64> = offsets.iter().map(|p| p[0].hypot(p[1])).collect();
    let mut order: Vec<usize> = (0..n_users).collect();
    order.sort_by(|&a, &b| user_distance[a].total_cmp(&user_distance[b]));

    let serving_fade: Vec<f64> = (0..n_users)
        .map(|u| sample_nakagami_power(&mut rng, nakagami_shape(cfg, user_distance[u])))
        .collect();
    let mut cross_fade = Vec::with_capacity(n_users * bs_count);
    for u in 0..n_users {
        let p = offsets[u];
        for y in &bs_points {
            let d = (p[0] - y[0]).hypot(p[1] - y[1]);
            cross_fade.push(sample_nakagami_power(&mut rng, nakagami_shape(cfg, d)));
        }
    }

    Realization {
        bs_points,
        interferer_beam_offsets,
        offsets,
        user_theta,
        user_distance,
        order,
        serving_fade,
        cross_fade,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rayleigh_reference_points() {
        let sigma = 10.0;
        assert!((rayleigh_pdf(10.0, sigma) - 0.1 * (-0.5f64).exp()).abs() < 1e-15);
        let median = sigma * (2.0 * 2f64.ln()).sqrt();
        assert!((rayleigh_cdf(median, sigma) - 0.5).abs() < 1e-12);
    }

    #[test]
    fn ordered_pdf_min_and_max_of_two() {
        // 2K = 2: the nearest of two has density 2 R_p (1 - R_c), the
        // farthest 2 R_p R_c.
        let sigma = 7.0;
        for &r in &[1.0, 5.0, 9.0, 20.0] {
            let p = rayleigh_pdf(r, sigma);
            let c = rayleigh_cdf(r, sigma);
            let min2 = ordered_pdf(1, r, 1, sigma);
            let max2 = ordered_pdf(2, r, 1, sigma);
            assert!((min2 - 2.0 * p * (1.0 - c)).abs() < 1e-12 * min2.max(1e-3));
            assert!((max2 - 2.0 * p * c).abs() < 1e-12 * max2.max(1e-3));
        }
    }

    #[test]
    fn ordered_mixture_recovers_rayleigh() {
        let sigma = 10.0;
        let pairs = 3;
        let n = 2 * pairs;
        for &r in &[2.0, 8.0, 15.0, 31.0] {
            let mix: f64 = (1..=n).map(|i| ordered_pdf(i, r, pairs, sigma)).sum::<f64>()
                / n as f64;
            let plain = rayleigh_pdf(r, sigma);
            assert!((mix - plain).abs() < 1e-12, "r={r}: {mix} vs {plain}");
        }
    }

    #[test]
    fn conditional_pdfs_support() {
        assert_eq!(conditional_far_pdf(3.0, 5.0, 10.0), 0.0);
        assert_eq!(conditional_near_pdf(5.0, 3.0, 10.0), 0.0);
        assert!(conditional_far_pdf(6.0, 5.0, 10.0) > 0.0);
        assert!(conditional_near_pdf(2.0, 5.0, 10.0) > 0.0);
    }

    #[test]
    fn sampling_is_deterministic() {
        let cfg = NetworkConfig::defaults();
        let w = default_window_radius(&cfg);
        let a = sample_realization(&cfg, w, 42);
        let b = sample_realization(&cfg, w, 42);
        assert_eq!(a.bs_points, b.bs_points);
        assert_eq!(a.serving_fade, b.serving_fade);
        assert_eq!(a.order, b.order);
        let c = sample_realization(&cfg, w, 43);
        assert_ne!(a.bs_points.len() == c.bs_points.len() && a.offsets == c.offsets, true);
    }

    #[test]
    fn empty_network_when_density_zero() {
        let mut cfg = NetworkConfig::defaults();
        cfg.lambda_c = 0.0;
        let r = sample_realization(&cfg, default_window_radius(&cfg), 7);
        assert!(r.bs_points.is_empty());
        assert_eq!(r.offsets.len(), cfg.users());
        assert!(r.cross_fade.is_empty());
    }
}
