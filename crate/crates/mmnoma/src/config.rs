//! Scenario configuration: parsing, validation, and derived quantities.
//!
//! `NetworkConfig` is the single source of truth for every symbol the
//! analytical and Monte Carlo modules consume. It is immutable after
//! validation and safe to share across worker threads.

use serde::{Deserialize, Serialize};
use std::path::Path;
use thiserror::Error;

/// Speed of light in m/s, used to derive the path-loss intercept from the
/// carrier frequency.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("failed to read config file: {0}")]
    Io(#[from] std::io::Error),
    #[error("failed to parse config file: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error("unknown config key: {0}")]
    UnknownKey(String),
    #[error("invalid value for {key}: {message}")]
    BadValue { key: String, message: String },
}

/// User-selection scheme. Order-statistic indices are 1-based ranks of the
/// 2K users in the typical cluster sorted by distance to their base station.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "scheme")]
pub enum SelectionScheme {
    /// Fixed near user at rank k; far partner drawn uniformly from ranks k+1..2K.
    Fnrf { k: usize },
    /// Fixed far user at rank j; near partner drawn uniformly from ranks 1..j-1.
    Rnff { j: usize },
    /// Both users fixed: near at rank k, far at rank j, k < j.
    Fnff { k: usize, j: usize },
}

/// Threshold range of the near-user coverage event. The two SINR conditions
/// (own decode and SIC pre-decode) collapse to a single fading-gain threshold
/// whose form depends on which condition dominates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RangeTag {
    R1,
    R2,
}

/// Gauss-Chebyshev orders and outer-integral controls.
///
/// `n1` averages the interferer beam offset inside the Laplace transform;
/// `n2` averages the serving-beam offset of the far user. `tail_epsilon`
/// truncates semi-infinite distance integrals at r_max = sigma * sqrt(2 ln(1/eps));
/// `abs_tol` is the absolute tolerance of adaptive quadrature.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSettings {
    pub n1: usize,
    pub n2: usize,
    pub tail_epsilon: f64,
    pub abs_tol: f64,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self { n1: 10, n2: 50, tail_epsilon: 1e-12, abs_tol: 1e-9 }
    }
}

/// Fully validated scenario description. All fields are linear-scale SI.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkConfig {
    /// Base-station (cluster parent) density, points per m^2.
    pub lambda_c: f64,
    /// Cluster standard deviation in metres: user offsets are N(0, sigma^2 I2).
    pub sigma: f64,
    /// NOMA pairs per cluster; the cluster holds exactly 2K users.
    pub pairs: usize,
    /// LOS disc radius in metres.
    pub r_los: f64,
    /// Path-loss exponents for the LOS and NLOS branches.
    pub alpha_los: f64,
    pub alpha_nlos: f64,
    /// Nakagami shape parameters (integer) for LOS and NLOS links.
    pub nakagami_los: u32,
    pub nakagami_nlos: u32,
    /// Path-loss intercepts at the 1 m reference distance.
    pub c_los: f64,
    pub c_nlos: f64,
    /// ULA antenna elements at each base station.
    pub antennas: u32,
    /// Carrier frequency in Hz.
    pub carrier_hz: f64,
    /// Power-allocation coefficients, a_near + a_far = 1, a_near < a_far.
    pub a_near: f64,
    pub a_far: f64,
    /// SINR thresholds, linear scale.
    pub tau_near: f64,
    pub tau_far: f64,
    /// Noise power normalized by transmit power, linear scale.
    pub noise: f64,
    /// System bandwidth in Hz.
    pub bandwidth: f64,
    pub scheme: SelectionScheme,
    pub quad: QuadratureSettings,
}

/// Intercept (lambda_w / (4 pi d0))^2 at d0 = 1 m for a carrier in Hz.
pub fn intercept_from_carrier(carrier_hz: f64) -> f64 {
    let wavelength = SPEED_OF_LIGHT / carrier_hz;
    let x = wavelength / (4.0 * std::f64::consts::PI);
    x * x
}

/// Convert a (transmit power dBm, noise power dBm) pair into the normalized
/// noise sigma_n^2 used throughout the analysis.
pub fn normalized_noise(tx_power_dbm: f64, noise_dbm: f64) -> f64 {
    10f64.powf((noise_dbm - tx_power_dbm) / 10.0)
}

impl NetworkConfig {
    /// General network settings used throughout the evaluation figures:
    /// 28 GHz carrier, M = 10 antennas, LOS disc 100 m, alpha = (2, 4),
    /// Nakagami (3, 2), density 1/(250^2 pi), sigma = 10 m, K = 2 pairs,
    /// B = 100 MHz, fixed-near/random-fixed pairing on ranks (1, 2K).
    pub fn defaults() -> Self {
        let carrier_hz = 28e9;
        let c = intercept_from_carrier(carrier_hz);
        Self {
            lambda_c: 1.0 / (250.0 * 250.0 * std::f64::consts::PI),
            sigma: 10.0,
            pairs: 2,
            r_los: 100.0,
            alpha_los: 2.0,
            alpha_nlos: 4.0,
            nakagami_los: 3,
            nakagami_nlos: 2,
            c_los: c,
            c_nlos: c,
            antennas: 10,
            carrier_hz,
            a_near: 0.1,
            a_far: 0.9,
            tau_near: 1.0,
            tau_far: 0.2,
            noise: 1e-8,
            bandwidth: 100e6,
            scheme: SelectionScheme::Fnrf { k: 1 },
            quad: QuadratureSettings::default(),
        }
    }

    /// Cluster size 2K.
    pub fn users(&self) -> usize {
        2 * self.pairs
    }

    /// Near-user rank for the configured scheme. FNRF and FNFF fix it;
    /// RNFF draws it uniformly below j, so the analytical path never asks.
    pub fn near_index(&self) -> Option<usize> {
        match self.scheme {
            SelectionScheme::Fnrf { k } | SelectionScheme::Fnff { k, .. } => Some(k),
            SelectionScheme::Rnff { .. } => None,
        }
    }

    /// Far-user rank for the configured scheme, where fixed.
    pub fn far_index(&self) -> Option<usize> {
        match self.scheme {
            SelectionScheme::Rnff { j } | SelectionScheme::Fnff { j, .. } => Some(j),
            SelectionScheme::Fnrf { .. } => None,
        }
    }

    /// NOMA feasibility margin a_far - tau_far * a_near; the far-user event
    /// is impossible unless this is positive.
    pub fn feasibility_margin(&self) -> f64 {
        self.a_far - self.tau_far * self.a_near
    }

    /// Truncation radius for semi-infinite distance integrals.
    pub fn r_max(&self) -> f64 {
        self.sigma * (2.0 * (1.0 / self.quad.tail_epsilon).ln()).sqrt()
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let fail = |msg: String| Err(ConfigError::Invalid(msg));
        if !(self.lambda_c >= 0.0) {
            return fail(format!("lambda_c must be nonnegative, got {}", self.lambda_c));
        }
        for (name, v) in [
            ("sigma", self.sigma),
            ("r_los", self.r_los),
            ("carrier_hz", self.carrier_hz),
            ("bandwidth", self.bandwidth),
            ("c_los", self.c_los),
            ("c_nlos", self.c_nlos),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return fail(format!("{name} must be strictly positive, got {v}"));
            }
        }
        if self.pairs == 0 {
            return fail("pairs must be at least 1".into());
        }
        if self.antennas == 0 {
            return fail("antennas must be at least 1".into());
        }
        if self.nakagami_los == 0 || self.nakagami_nlos == 0 {
            return fail("Nakagami shapes must be at least 1".into());
        }
        if !(self.alpha_los >= 2.0) {
            return fail(format!("alpha_los must be >= 2, got {}", self.alpha_los));
        }
        if !(self.alpha_nlos > 2.0) {
            return fail(format!(
                "alpha_nlos > 2 required by the interference tail integral, got {}",
                self.alpha_nlos
            ));
        }
        if !(self.a_near > 0.0 && self.a_far > 0.0) {
            return fail("power allocation coefficients must be positive".into());
        }
        if (self.a_near + self.a_far - 1.0).abs() > 1e-12 {
            return fail(format!(
                "a_near + a_far = 1 violated: {} + {}",
                self.a_near, self.a_far
            ));
        }
        if !(self.a_near < self.a_far) {
            return fail(format!("a_near < a_far violated: {} vs {}", self.a_near, self.a_far));
        }
        if !(self.tau_near >= 0.0 && self.tau_far >= 0.0) {
            return fail("thresholds must be nonnegative".into());
        }
        if !(self.feasibility_margin() > 0.0) {
            return fail(format!(
                "a_far - tau_far * a_near <= 0: {} - {} * {}",
                self.a_far, self.tau_far, self.a_near
            ));
        }
        if !(self.noise >= 0.0) {
            return fail("noise must be nonnegative".into());
        }
        let k2 = self.users();
        match self.scheme {
            SelectionScheme::Fnrf { k } => {
                if !(1 <= k && k <= k2 - 1) {
                    return fail(format!("FNRF requires 1 <= k <= 2K-1, got k={k}, 2K={k2}"));
                }
            }
            SelectionScheme::Rnff { j } => {
                if !(2 <= j && j <= k2) {
                    return fail(format!("RNFF requires 2 <= j <= 2K, got j={j}, 2K={k2}"));
                }
            }
            SelectionScheme::Fnff { k, j } => {
                if !(1 <= k && k < j && j <= k2) {
                    return fail(format!("FNFF requires 1 <= k < j <= 2K, got k={k}, j={j}, 2K={k2}"));
                }
            }
        }
        if self.quad.n1 < 1 || self.quad.n2 < 1 {
            return fail("Chebyshev orders must be at least 1".into());
        }
        if !(self.quad.tail_epsilon > 0.0 && self.quad.tail_epsilon < 1.0) {
            return fail("tail_epsilon must lie in (0,1)".into());
        }
        if !(self.quad.abs_tol > 0.0) {
            return fail("abs_tol must be positive".into());
        }
        Ok(())
    }

    /// Threshold-range classifier for the near-user coverage event.
    ///
    /// R1 when a_near*tau_far < a_far <= a_near*tau_far*(1 + 1/tau_near):
    /// the SIC pre-decode condition dominates and the collapsed kernel uses
    /// (tau_far, a_far - tau_far*a_near). R2 when a_far exceeds the upper
    /// bound: the own-decode condition dominates with kernel (tau_near,
    /// a_near). The boundary belongs to R1; both kernels coincide there.
    pub fn classify_threshold_range(&self) -> RangeTag {
        assert!(
            self.feasibility_margin() > 0.0,
            "threshold range undefined for infeasible NOMA allocation"
        );
        // tau_near = 0 makes the own-decode condition vacuous: R1 for any
        // feasible a_far (the upper bound is +infinity).
        if self.tau_near == 0.0 {
            return RangeTag::R1;
        }
        let upper = self.a_near * self.tau_far * (1.0 + 1.0 / self.tau_near);
        if self.a_far <= upper {
            RangeTag::R1
        } else {
            RangeTag::R2
        }
    }

    /// Collapsed near-user kernel (tau, beta): the near event holds iff the
    /// serving fading power exceeds tau * (I + noise) * r^alpha / (beta * M * C).
    pub fn near_kernel(&self) -> (f64, f64) {
        match self.classify_threshold_range() {
            RangeTag::R1 => (self.tau_far, self.feasibility_margin()),
            RangeTag::R2 => (self.tau_near, self.a_near),
        }
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text)
    }

    pub fn from_toml_str(text: &str) -> Result<Self, ConfigError> {
        let file: ConfigFile = toml::from_str(text)?;
        file.into_config()
    }

    pub fn to_toml_string(&self) -> String {
        ConfigFile::from_config(self).render()
    }

    /// Apply a `key=value` override using the config-file key names.
    pub fn set_key(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        let bad = |message: String| ConfigError::BadValue { key: key.to_string(), message };
        let parse_f64 = |v: &str| {
            v.parse::<f64>()
                .map_err(|e| bad(format!("expected a number, got {v:?}: {e}")))
        };
        let parse_usize = |v: &str| {
            v.parse::<usize>()
                .map_err(|e| bad(format!("expected an integer, got {v:?}: {e}")))
        };
        match key {
            "lambda_c_per_m2" => self.lambda_c = parse_f64(value)?,
            "sigma_m" => self.sigma = parse_f64(value)?,
            "pairs" => self.pairs = parse_usize(value)?,
            "r_los_m" => self.r_los = parse_f64(value)?,
            "alpha_los" => self.alpha_los = parse_f64(value)?,
            "alpha_nlos" => self.alpha_nlos = parse_f64(value)?,
            "nakagami_los" => self.nakagami_los = parse_usize(value)? as u32,
            "nakagami_nlos" => self.nakagami_nlos = parse_usize(value)? as u32,
            "antennas" => self.antennas = parse_usize(value)? as u32,
            "carrier_ghz" => {
                self.carrier_hz = parse_f64(value)? * 1e9;
                let c = intercept_from_carrier(self.carrier_hz);
                self.c_los = c;
                self.c_nlos = c;
            }
            "a_near" => {
                self.a_near = parse_f64(value)?;
                self.a_far = 1.0 - self.a_near;
            }
            "tau_near" => self.tau_near = parse_f64(value)?,
            "tau_far" => self.tau_far = parse_f64(value)?,
            "noise_normalized" => self.noise = parse_f64(value)?,
            "noise_dbm" => {
                // Interpreted against the 1 W (30 dBm) reference transmit
                // power unless the file supplied tx_power_dbm.
                self.noise = normalized_noise(30.0, parse_f64(value)?);
            }
            "bandwidth_mhz" => self.bandwidth = parse_f64(value)? * 1e6,
            "scheme" => {
                self.scheme = match value {
                    "fnrf" => SelectionScheme::Fnrf { k: self.near_index().unwrap_or(1) },
                    "rnff" => SelectionScheme::Rnff { j: self.far_index().unwrap_or(self.users()) },
                    "fnff" => SelectionScheme::Fnff {
                        k: self.near_index().unwrap_or(1),
                        j: self.far_index().unwrap_or(self.users()),
                    },
                    other => return Err(bad(format!("unknown scheme {other:?}"))),
                };
            }
            "near_rank" => {
                let k = parse_usize(value)?;
                self.scheme = match self.scheme {
                    SelectionScheme::Fnrf { .. } => SelectionScheme::Fnrf { k },
                    SelectionScheme::Fnff { j, .. } => SelectionScheme::Fnff { k, j },
                    s @ SelectionScheme::Rnff { .. } => {
                        let _ = s;
                        return Err(bad("near_rank is not used by the rnff scheme".into()));
                    }
                };
            }
            "far_rank" => {
                let j = parse_usize(value)?;
                self.scheme = match self.scheme {
                    SelectionScheme::Rnff { .. } => SelectionScheme::Rnff { j },
                    SelectionScheme::Fnff { k, .. } => SelectionScheme::Fnff { k, j },
                    s @ SelectionScheme::Fnrf { .. } => {
                        let _ = s;
                        return Err(bad("far_rank is not used by the fnrf scheme".into()));
                    }
                };
            }
            "n1" => self.quad.n1 = parse_usize(value)?,
            "n2" => self.quad.n2 = parse_usize(value)?,
            "tail_epsilon" => self.quad.tail_epsilon = parse_f64(value)?,
            "abs_tol" => self.quad.abs_tol = parse_f64(value)?,
            other => return Err(ConfigError::UnknownKey(other.to_string())),
        }
        Ok(())
    }
}

// --- file representation ---

/// Flat key-value file schema with units in key names. Noise enters either
/// as `noise_normalized` (linear sigma_n^2) or as `noise_dbm` together with
/// `tx_power_dbm`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    lambda_c_per_m2: Option<f64>,
    sigma_m: f64,
    pairs: usize,
    r_los_m: f64,
    alpha_los: f64,
    alpha_nlos: f64,
    nakagami_los: u32,
    nakagami_nlos: u32,
    antennas: u32,
    carrier_ghz: f64,
    a_near: f64,
    a_far: Option<f64>,
    tau_near: f64,
    tau_far: f64,
    noise_normalized: Option<f64>,
    noise_dbm: Option<f64>,
    tx_power_dbm: Option<f64>,
    bandwidth_mhz: f64,
    scheme: String,
    near_rank: Option<usize>,
    far_rank: Option<usize>,
    n1: Option<usize>,
    n2: Option<usize>,
    tail_epsilon: Option<f64>,
    abs_tol: Option<f64>,
}

impl ConfigFile {
    fn into_config(self) -> Result<NetworkConfig, ConfigError> {
        let invalid = |msg: String| ConfigError::Invalid(msg);
        let noise = match (self.noise_normalized, self.noise_dbm) {
            (Some(n), None) => n,
            (None, Some(dbm)) => {
                let tx = self.tx_power_dbm.ok_or_else(|| {
                    invalid("noise_dbm requires tx_power_dbm to form the normalized ratio".into())
                })?;
                normalized_noise(tx, dbm)
            }
            (Some(_), Some(_)) => {
                return Err(invalid(
                    "give either noise_normalized or noise_dbm, not both".into(),
                ))
            }
            (None, None) => {
                return Err(invalid("one of noise_normalized or noise_dbm is required".into()))
            }
        };
        let a_near = self.a_near;
        let a_far = self.a_far.unwrap_or(1.0 - a_near);
        let carrier_hz = self.carrier_ghz * 1e9;
        let c = intercept_from_carrier(carrier_hz);
        let users = 2 * self.pairs;
        let scheme = match self.scheme.as_str() {
            "fnrf" => SelectionScheme::Fnrf { k: self.near_rank.unwrap_or(1) },
            "rnff" => SelectionScheme::Rnff { j: self.far_rank.unwrap_or(users) },
            "fnff" => SelectionScheme::Fnff {
                k: self.near_rank.unwrap_or(1),
                j: self.far_rank.unwrap_or(users),
            },
            other => return Err(invalid(format!("unknown scheme {other:?}"))),
        };
        let defaults = QuadratureSettings::default();
        let cfg = NetworkConfig {
            lambda_c: self.lambda_c_per_m2.unwrap_or(0.0),
            sigma: self.sigma_m,
            pairs: self.pairs,
            r_los: self.r_los_m,
            alpha_los: self.alpha_los,
            alpha_nlos: self.alpha_nlos,
            nakagami_los: self.nakagami_los,
            nakagami_nlos: self.nakagami_nlos,
            c_los: c,
            c_nlos: c,
            antennas: self.antennas,
            carrier_hz,
            a_near,
            a_far,
            tau_near: self.tau_near,
            tau_far: self.tau_far,
            noise,
            bandwidth: self.bandwidth_mhz * 1e6,
            scheme,
            quad: QuadratureSettings {
                n1: self.n1.unwrap_or(defaults.n1),
                n2: self.n2.unwrap_or(defaults.n2),
                tail_epsilon: self.tail_epsilon.unwrap_or(defaults.tail_epsilon),
                abs_tol: self.abs_tol.unwrap_or(defaults.abs_tol),
            },
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn from_config(cfg: &NetworkConfig) -> Self {
        let (scheme, near_rank, far_rank) = match cfg.scheme {
            SelectionScheme::Fnrf { k } => ("fnrf", Some(k), None),
            SelectionScheme::Rnff { j } => ("rnff", None, Some(j)),
            SelectionScheme::Fnff { k, j } => ("fnff", Some(k), Some(j)),
        };
        ConfigFile {
            lambda_c_per_m2: Some(cfg.lambda_c),
            sigma_m: cfg.sigma,
            pairs: cfg.pairs,
            r_los_m: cfg.r_los,
            alpha_los: cfg.alpha_los,
            alpha_nlos: cfg.alpha_nlos,
            nakagami_los: cfg.nakagami_los,
            nakagami_nlos: cfg.nakagami_nlos,
            antennas: cfg.antennas,
            carrier_ghz: cfg.carrier_hz / 1e9,
            a_near: cfg.a_near,
            a_far: Some(cfg.a_far),
            tau_near: cfg.tau_near,
            tau_far: cfg.tau_far,
            noise_normalized: Some(cfg.noise),
            noise_dbm: None,
            tx_power_dbm: None,
            bandwidth_mhz: cfg.bandwidth / 1e6,
            scheme: scheme.to_string(),
            near_rank,
            far_rank,
            n1: Some(cfg.quad.n1),
            n2: Some(cfg.quad.n2),
            tail_epsilon: Some(cfg.quad.tail_epsilon),
            abs_tol: Some(cfg.quad.abs_tol),
        }
    }

    fn render(&self) -> String {
        toml::to_string(self).expect("config serialization cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table1_toml() -> String {
        "\
            lambda_c_per_m2 = 5.092958178940651e-6\n\
            sigma_m = 10.0\n\
            pairs = 2\n\
            r_los_m = 100.0\n\
            alpha_los = 2.0\n\
            alpha_nlos = 4.0\n\
            nakagami_los = 3\n\
            nakagami_nlos = 2\n\
            antennas = 10\n\
            carrier_ghz = 28.0\n\
            a_near = 0.1\n\
            tau_near = 1.0\n\
            tau_far = 0.2\n\
            noise_dbm = -50.0\n\
            tx_power_dbm = 30.0\n\
            bandwidth_mhz = 100.0\n\
            scheme = \"fnrf\"\n\
        "
        .to_string()
    }

    #[test]
    fn table1_file_is_valid() {
        let cfg = NetworkConfig::from_toml_str(&table1_toml()).unwrap();
        assert_eq!(cfg.pairs, 2);
        assert_eq!(cfg.users(), 4);
        assert!((cfg.noise - 1e-8).abs() < 1e-20);
        // 28 GHz intercept: (c / f / (4 pi))^2.
        let expect = (SPEED_OF_LIGHT / 28e9 / (4.0 * std::f64::consts::PI)).powi(2);
        assert!((cfg.c_los - expect).abs() / expect < 1e-12);
        assert_eq!(cfg.scheme, SelectionScheme::Fnrf { k: 1 });
    }

    #[test]
    fn equal_allocation_rejected() {
        let mut cfg = NetworkConfig::defaults();
        cfg.a_near = 0.5;
        cfg.a_far = 0.5;
        let err = cfg.validate().unwrap_err().to_string();
        assert!(err.contains("a_near < a_far"), "unexpected message: {err}");
    }

    #[test]
    fn infeasible_thresholds_rejected() {
        let mut cfg = NetworkConfig::defaults();
        cfg.a_near = 0.4;
        cfg.a_far = 0.6;
        cfg.tau_far = 2.0;
        let err = cfg.validate().unwrap_err().to_string();
        assert!(err.contains("a_far - tau_far * a_near"), "unexpected message: {err}");
    }

    #[test]
    fn threshold_ranges_match_reference_parameter_sets() {
        let mut cfg = NetworkConfig::defaults();
        cfg.a_near = 0.4;
        cfg.a_far = 0.6;
        cfg.tau_near = 1.0;
        cfg.tau_far = 1.0;
        assert_eq!(cfg.classify_threshold_range(), RangeTag::R1);

        cfg.a_near = 0.1;
        cfg.a_far = 0.9;
        cfg.tau_far = 0.2;
        assert_eq!(cfg.classify_threshold_range(), RangeTag::R2);
    }

    #[test]
    fn range_boundary_is_r1_and_kernels_coincide() {
        let mut cfg = NetworkConfig::defaults();
        // Pick tau so a_far sits exactly on a_near*tau_far*(1 + 1/tau_near).
        cfg.a_near = 0.25;
        cfg.a_far = 0.75;
        cfg.tau_near = 1.0;
        cfg.tau_far = 1.5;
        let upper = cfg.a_near * cfg.tau_far * (1.0 + 1.0 / cfg.tau_near);
        assert!((cfg.a_far - upper).abs() < 1e-15);
        assert_eq!(cfg.classify_threshold_range(), RangeTag::R1);
        // At the boundary tau_far/(a_far - tau_far a_near) = tau_near/a_near,
        // so the R1 and R2 kernels produce the same fading threshold.
        let (tau, beta) = cfg.near_kernel();
        assert!((tau / beta - cfg.tau_near / cfg.a_near).abs() < 1e-12);
    }

    #[test]
    fn round_trip_preserves_fields() {
        let mut cfg = NetworkConfig::defaults();
        cfg.scheme = SelectionScheme::Fnff { k: 1, j: 3 };
        cfg.validate().unwrap();
        let text = cfg.to_toml_string();
        let back = NetworkConfig::from_toml_str(&text).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn set_key_overrides() {
        let mut cfg = NetworkConfig::defaults();
        cfg.set_key("noise_dbm", "-60").unwrap();
        assert!((cfg.noise - 1e-9).abs() < 1e-22);
        cfg.set_key("antennas", "20").unwrap();
        assert_eq!(cfg.antennas, 20);
        cfg.set_key("carrier_ghz", "73").unwrap();
        let expect = intercept_from_carrier(73e9);
        assert!((cfg.c_los - expect).abs() / expect < 1e-12);
        assert!(cfg.set_key("no_such_key", "1").is_err());
    }

    #[test]
    fn scheme_index_bounds_enforced() {
        let mut cfg = NetworkConfig::defaults();
        cfg.scheme = SelectionScheme::Fnrf { k: 4 };
        assert!(cfg.validate().is_err(), "k = 2K leaves no far partner");
        cfg.scheme = SelectionScheme::Rnff { j: 1 };
        assert!(cfg.validate().is_err(), "j = 1 leaves no near partner");
        cfg.scheme = SelectionScheme::Fnff { k: 2, j: 2 };
        assert!(cfg.validate().is_err(), "k < j required");
    }
}
