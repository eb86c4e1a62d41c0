//! Python bindings: a configuration class plus the coverage, Laplace
//! transform, simulation, and system-rate entry points. Selection schemes,
//! roles, and methods travel as strings to keep the surface small.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use mmnoma::montecarlo::{mc_coverage, mc_laplace, mc_system_rate};
use mmnoma::throughput::{system_rate_noma, system_rate_oma, RateRequirement};
use mmnoma::{
    coverage, AnalysisMode, LaplaceEvaluator, LaplaceMode, NetworkConfig, Role,
};

fn value_err(message: String) -> PyErr {
    PyValueError::new_err(message)
}

fn parse_role(role: &str) -> PyResult<Role> {
    match role {
        "near" => Ok(Role::Near),
        "far" => Ok(Role::Far),
        other => Err(value_err(format!("unknown role {other:?}; use \"near\" or \"far\""))),
    }
}

fn parse_mode(mode: &str) -> PyResult<AnalysisMode> {
    match mode {
        "theorem" => Ok(AnalysisMode::Theorem),
        "special1" => Ok(AnalysisMode::Special1),
        "special2" | "closed-form" => Ok(AnalysisMode::ClosedForm),
        other => Err(value_err(format!(
            "unknown method {other:?}; use \"theorem\", \"special1\", or \"special2\""
        ))),
    }
}

/// Scenario parameters for one evaluation.
#[pyclass(name = "NetworkConfig", module = "mmnoma_py")]
#[derive(Clone)]
struct PyNetworkConfig {
    inner: NetworkConfig,
}

#[pymethods]
impl PyNetworkConfig {
    /// Reference scenario used throughout the evaluation figures.
    #[staticmethod]
    fn defaults() -> Self {
        Self {
            inner: NetworkConfig::defaults(),
        }
    }

    /// Parse a scenario from TOML text.
    #[staticmethod]
    fn from_toml(text: &str) -> PyResult<Self> {
        NetworkConfig::from_toml_str(text)
            .map(|inner| Self { inner })
            .map_err(|e| value_err(e.to_string()))
    }

    /// Serialize the scenario to TOML text.
    fn to_toml(&self) -> String {
        self.inner.to_toml_string()
    }

    /// Set one parameter by config-file key, e.g. set("noise_dbm", "-60").
    /// Values are parsed from strings exactly like the command-line --set.
    fn set(&mut self, key: &str, value: &str) -> PyResult<()> {
        self.inner
            .set_key(key, value)
            .and_then(|()| self.inner.validate())
            .map_err(|e| value_err(e.to_string()))
    }

    /// Read one parameter back as a string.
    fn get(&self, key: &str) -> PyResult<String> {
        let cfg = &self.inner;
        let text = match key {
            "lambda_c_per_m2" => cfg.lambda_c.to_string(),
            "sigma_m" => cfg.sigma.to_string(),
            "pairs" => cfg.pairs.to_string(),
            "users" => cfg.users().to_string(),
            "r_los_m" => cfg.r_los.to_string(),
            "alpha_los" => cfg.alpha_los.to_string(),
            "alpha_nlos" => cfg.alpha_nlos.to_string(),
            "nakagami_los" => cfg.nakagami_los.to_string(),
            "nakagami_nlos" => cfg.nakagami_nlos.to_string(),
            "antennas" => cfg.antennas.to_string(),
            "carrier_ghz" => (cfg.carrier_hz / 1e9).to_string(),
            "a_near" => cfg.a_near.to_string(),
            "a_far" => cfg.a_far.to_string(),
            "tau_near" => cfg.tau_near.to_string(),
            "tau_far" => cfg.tau_far.to_string(),
            "noise_normalized" => cfg.noise.to_string(),
            "bandwidth_mhz" => (cfg.bandwidth / 1e6).to_string(),
            "n1" => cfg.quad.n1.to_string(),
            "n2" => cfg.quad.n2.to_string(),
            other => return Err(value_err(format!("unknown config key: {other}"))),
        };
        Ok(text)
    }

    fn __repr__(&self) -> String {
        format!(
            "NetworkConfig(pairs={}, sigma={}, antennas={}, scheme={:?})",
            self.inner.pairs, self.inner.sigma, self.inner.antennas, self.inner.scheme
        )
    }
}

/// Coverage probability for one role under the configured scheme.
/// method: "theorem" (full model), "special1" (LOS-only interference),
/// or "special2" (sparse-network closed forms).
#[pyfunction]
#[pyo3(signature = (cfg, role, method = "theorem"))]
fn coverage_probability(cfg: &PyNetworkConfig, role: &str, method: &str) -> PyResult<f64> {
    let role = parse_role(role)?;
    let mode = parse_mode(method)?;
    if mode == AnalysisMode::ClosedForm {
        if cfg.inner.alpha_los != 2.0 {
            return Err(value_err("special2 requires alpha_los = 2".into()));
        }
        if cfg.inner.lambda_c != 0.0 {
            return Err(value_err("special2 requires lambda_c = 0 (sparse network)".into()));
        }
    } else if mode == AnalysisMode::Special1 && cfg.inner.alpha_los != 2.0 {
        return Err(value_err("special1 requires alpha_los = 2".into()));
    }
    Ok(coverage(&cfg.inner, role, mode).value)
}

/// Laplace transform of the inter-cluster interference at argument s.
#[pyfunction]
#[pyo3(signature = (cfg, s, los_only = false))]
fn laplace_transform(cfg: &PyNetworkConfig, s: f64, los_only: bool) -> PyResult<f64> {
    if s < 0.0 {
        return Err(value_err("transform argument must be nonnegative".into()));
    }
    let mode = if los_only {
        if cfg.inner.alpha_los != 2.0 {
            return Err(value_err("the LOS-only transform requires alpha_los = 2".into()));
        }
        LaplaceMode::SpecialCase1
    } else {
        LaplaceMode::Full
    };
    Ok(LaplaceEvaluator::new(&cfg.inner, mode).eval(s))
}

/// Monte Carlo coverage estimate: returns (mean, half_width) of a 95%
/// confidence interval. Deterministic for a fixed (cfg, samples, seed).
#[pyfunction]
#[pyo3(signature = (cfg, role, samples = 100_000, seed = 1))]
fn simulate_coverage(
    cfg: &PyNetworkConfig,
    role: &str,
    samples: u64,
    seed: u64,
) -> PyResult<(f64, f64)> {
    let role = parse_role(role)?;
    if samples == 0 {
        return Err(value_err("samples must be positive".into()));
    }
    let est = mc_coverage(&cfg.inner, role, samples, seed);
    Ok((est.mean, est.half_width))
}

/// Monte Carlo estimate of the interference Laplace transform at s.
#[pyfunction]
#[pyo3(signature = (cfg, s, samples = 100_000, seed = 1))]
fn simulate_laplace(cfg: &PyNetworkConfig, s: f64, samples: u64, seed: u64) -> PyResult<(f64, f64)> {
    if s < 0.0 {
        return Err(value_err("transform argument must be nonnegative".into()));
    }
    if samples == 0 {
        return Err(value_err("samples must be positive".into()));
    }
    let est = mc_laplace(&cfg.inner, s, samples, seed);
    Ok((est.mean, est.half_width))
}

/// Expected system rate in bits/s for the paired (NOMA) design.
#[pyfunction]
fn noma_rate(cfg: &PyNetworkConfig, rate_near: f64, rate_far: f64) -> PyResult<f64> {
    if rate_near <= 0.0 || rate_far <= 0.0 {
        return Err(value_err("target rates must be positive".into()));
    }
    let req = RateRequirement::new(rate_near, rate_far, cfg.inner.bandwidth);
    Ok(system_rate_noma(&cfg.inner, req))
}

/// Expected system rate in bits/s for the orthogonal baseline.
#[pyfunction]
fn oma_rate(cfg: &PyNetworkConfig, rate_near: f64, rate_far: f64) -> PyResult<f64> {
    if rate_near <= 0.0 || rate_far <= 0.0 {
        return Err(value_err("target rates must be positive".into()));
    }
    let req = RateRequirement::new(rate_near, rate_far, cfg.inner.bandwidth);
    Ok(system_rate_oma(&cfg.inner, req))
}

/// Monte Carlo system rates: returns a dict with noma, oma, and their 95%
/// half-widths, all in bits/s.
#[pyfunction]
#[pyo3(signature = (cfg, rate_near, rate_far, samples = 100_000, seed = 1))]
fn simulate_rates(
    py: Python<'_>,
    cfg: &PyNetworkConfig,
    rate_near: f64,
    rate_far: f64,
    samples: u64,
    seed: u64,
) -> PyResult<PyObject> {
    if rate_near <= 0.0 || rate_far <= 0.0 {
        return Err(value_err("target rates must be positive".into()));
    }
    if samples == 0 {
        return Err(value_err("samples must be positive".into()));
    }
    let req = RateRequirement::new(rate_near, rate_far, cfg.inner.bandwidth);
    let est = mc_system_rate(&cfg.inner, req, samples, seed);
    let out = pyo3::types::PyDict::new(py);
    out.set_item("noma", est.noma)?;
    out.set_item("noma_half_width", est.noma_half_width)?;
    out.set_item("oma", est.oma)?;
    out.set_item("oma_half_width", est.oma_half_width)?;
    Ok(out.into())
}

#[pymodule]
fn mmnoma_py(_py: Python<'_>, m: &PyModule) -> PyResult<()> {
    m.add_class::<PyNetworkConfig>()?;
    m.add_function(wrap_pyfunction!(coverage_probability, m)?)?;
    m.add_function(wrap_pyfunction!(laplace_transform, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_coverage, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_laplace, m)?)?;
    m.add_function(wrap_pyfunction!(noma_rate, m)?)?;
    m.add_function(wrap_pyfunction!(oma_rate, m)?)?;
    m.add_function(wrap_pyfunction!(simulate_rates, m)?)?;
    Ok(())
}
