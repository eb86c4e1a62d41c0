//! Command-line front end: single-point evaluation, grid sweeps, carrier
//! comparison, an analysis-vs-simulation agreement suite, and the named
//! figure presets. Data goes to standard output or --out as CSV with a
//! fixed column contract; progress goes to standard error. Exit codes:
//! 0 success, 1 usage or config error, 2 agreement-suite failure.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use thiserror::Error;

use mmnoma::montecarlo::{mc_coverage, mc_coverage_all};
use mmnoma::throughput::{system_rate_noma, system_rate_oma, RateRequirement};
use mmnoma::{coverage, AnalysisMode, ConfigError, NetworkConfig, Role, SelectionScheme};

const CSV_HEADER: &str = "param,value,scheme,role,method,coverage_or_rate,mc_half_width,runtime_ms";
const TX_DBM: f64 = 30.0;

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Usage(String),
    #[error("failed to write output: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Parser)]
#[command(
    name = "mmnoma",
    version,
    about = "Coverage and throughput of clustered mmWave NOMA networks"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Scenario file (TOML). Built-in defaults when omitted.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Override a config key, e.g. --set noise_dbm=-60. Repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
    /// Base seed for simulation runs.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Samples per simulation estimate.
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    /// Override the interference-transform quadrature order.
    #[arg(long)]
    n1: Option<usize>,
    /// Override the beam-average quadrature order.
    #[arg(long)]
    n2: Option<usize>,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Record wall-clock runtimes in the runtime_ms column instead of 0.
    /// Off by default so repeated runs produce byte-identical files.
    #[arg(long)]
    timing: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate coverage for the configured scenario.
    Eval {
        #[command(flatten)]
        common: CommonArgs,
        /// Analysis methods to run. Repeatable.
        #[arg(long = "method", value_enum, default_values_t = [Method::Theorem])]
        methods: Vec<Method>,
    },
    /// Sweep one config key over a value grid.
    Sweep {
        #[command(flatten)]
        common: CommonArgs,
        /// Config key to sweep (config-file key names, e.g. noise_dbm).
        #[arg(long)]
        param: String,
        /// Comma-separated grid values.
        #[arg(long)]
        values: Option<String>,
        /// Range start (with --to and --step).
        #[arg(long)]
        from: Option<f64>,
        /// Range end, inclusive.
        #[arg(long)]
        to: Option<f64>,
        /// Range step, positive.
        #[arg(long)]
        step: Option<f64>,
        /// Analysis methods to run. Repeatable.
        #[arg(long = "method", value_enum, default_values_t = [Method::Theorem])]
        methods: Vec<Method>,
    },
    /// Coverage per reference carrier row (28/38/60/73 GHz), with rankings.
    CompareFreq {
        #[command(flatten)]
        common: CommonArgs,
        /// Noise level(s) in dBm. Repeatable.
        #[arg(long = "noise-dbm", default_values_t = [-50.0])]
        noise_dbm: Vec<f64>,
    },
    /// Analysis-vs-simulation agreement suite. Exits 2 when a point fails.
    Validate {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Near-user coverage vs noise, both schemes, two power/threshold sets.
    Fig2a {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Far-user coverage vs noise, both schemes.
    Fig2b {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Coverage vs cluster spread sigma.
    Fig3a {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Near-user coverage vs the number of pairs.
    Fig3b {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Coverage vs array size.
    Fig4a {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Coverage per reference carrier row at -50 dBm.
    Fig4b {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// System rate vs noise: paired access against orthogonal access.
    Fig5a {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// System rate vs array size.
    Fig5b {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Far-user coverage vs quadrature orders.
    Fig6 {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Debug)]
enum Method {
    /// Full interference model.
    Theorem,
    /// LOS-only interference; needs alpha_los = 2.
    Special1,
    /// Sparse-network closed forms; needs lambda_c = 0 and alpha_los = 2.
    Special2,
    /// Monte Carlo simulation.
    Mc,
}

impl Method {
    fn label(self) -> &'static str {
        match self {
            Method::Theorem => "theorem",
            Method::Special1 => "special1",
            Method::Special2 => "special2",
            Method::Mc => "mc",
        }
    }

    fn check(self, cfg: &NetworkConfig) -> Result<(), CliError> {
        let need = |ok: bool, what: &str| {
            if ok {
                Ok(())
            } else {
                Err(CliError::Usage(format!("method {} requires {what}", self.label())))
            }
        };
        match self {
            Method::Theorem | Method::Mc => Ok(()),
            Method::Special1 => need(cfg.alpha_los == 2.0, "alpha_los = 2"),
            Method::Special2 => {
                need(cfg.alpha_los == 2.0, "alpha_los = 2")?;
                need(cfg.lambda_c == 0.0, "lambda_c = 0 (sparse network)")
            }
        }
    }
}

/// One CSV data line; comments carry section context for multi-set figures.
enum Line {
    Row {
        param: String,
        value: String,
        scheme: &'static str,
        role: &'static str,
        method: &'static str,
        result: f64,
        half_width: f64,
        runtime_ms: u128,
    },
    Comment(String),
}

fn render(lines: &[Line]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for line in lines {
        match line {
            Line::Comment(text) => {
                out.push_str("# ");
                out.push_str(text);
                out.push('\n');
            }
            Line::Row {
                param,
                value,
                scheme,
                role,
                method,
                result,
                half_width,
                runtime_ms,
            } => {
                out.push_str(&format!(
                    "{param},{value},{scheme},{role},{method},{result:.9},{half_width:.9},{runtime_ms}\n"
                ));
            }
        }
    }
    out
}

fn scheme_label(scheme: SelectionScheme) -> &'static str {
    match scheme {
        SelectionScheme::Fnrf { .. } => "fnrf",
        SelectionScheme::Rnff { .. } => "rnff",
        SelectionScheme::Fnff { .. } => "fnff",
    }
}

fn role_label(role: Role) -> &'static str {
    match role {
        Role::Near => "near",
        Role::Far => "far",
    }
}

fn splitmix(seed: u64, index: u64) -> u64 {
    let mut z = seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn load_config(common: &CommonArgs) -> Result<NetworkConfig, CliError> {
    let mut cfg = match &common.config {
        Some(path) => NetworkConfig::load(path)?,
        None => NetworkConfig::defaults(),
    };
    for pair in &common.set {
        let (key, value) = pair
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--set expects KEY=VALUE, got {pair:?}")))?;
        cfg.set_key(key.trim(), value.trim())?;
    }
    if let Some(n1) = common.n1 {
        cfg.quad.n1 = n1;
    }
    if let Some(n2) = common.n2 {
        cfg.quad.n2 = n2;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn emit(common: &CommonArgs, lines: &[Line]) -> Result<(), CliError> {
    let text = render(lines);
    match &common.out {
        Some(path) => {
            std::fs::write(path, text)?;
            eprintln!("wrote {}", path.display());
        }
        None => print!("{text}"),
    }
    Ok(())
}

/// Coverage rows for both roles under one method at one grid point.
fn coverage_rows(
    cfg: &NetworkConfig,
    method: Method,
    param: &str,
    value: &str,
    samples: u64,
    seed: u64,
    timing: bool,
) -> Vec<Line> {
    let mut rows = Vec::new();
    for role in [Role::Near, Role::Far] {
        let start = Instant::now();
        let (result, half_width) = match method {
            Method::Mc => {
                let est = mc_coverage(cfg, role, samples, seed);
                (est.mean, est.half_width)
            }
            Method::Theorem => (coverage(cfg, role, AnalysisMode::Theorem).value, 0.0),
            Method::Special1 => (coverage(cfg, role, AnalysisMode::Special1).value, 0.0),
            Method::Special2 => (coverage(cfg, role, AnalysisMode::ClosedForm).value, 0.0),
        };
        rows.push(Line::Row {
            param: param.to_string(),
            value: value.to_string(),
            scheme: scheme_label(cfg.scheme),
            role: role_label(role),
            method: method.label(),
            result,
            half_width,
            runtime_ms: if timing { start.elapsed().as_millis() } else { 0 },
        });
    }
    rows
}

fn run_eval(common: &CommonArgs, methods: &[Method]) -> Result<(), CliError> {
    let cfg = load_config(common)?;
    for method in methods {
        method.check(&cfg)?;
    }
    // The noise level is the natural point label for a single evaluation.
    let dbm = 10.0 * cfg.noise.log10() + TX_DBM;
    let value = format!("{dbm:.3}");
    let mut lines = Vec::new();
    for (i, method) in methods.iter().enumerate() {
        eprintln!("eval: method {} ({}/{})", method.label(), i + 1, methods.len());
        lines.extend(coverage_rows(
            &cfg,
            *method,
            "noise_dbm",
            &value,
            common.samples,
            splitmix(common.seed, i as u64),
            common.timing,
        ));
    }
    emit(common, &lines)
}

fn parse_grid(
    values: &Option<String>,
    from: Option<f64>,
    to: Option<f64>,
    step: Option<f64>,
) -> Result<Vec<String>, CliError> {
    let mut grid: Vec<(f64, String)> = Vec::new();
    match (values, from, to, step) {
        (Some(list), None, None, None) => {
            for item in list.split(',') {
                let text = item.trim();
                if text.is_empty() {
                    continue;
                }
                let number: f64 = text
                    .parse()
                    .map_err(|e| CliError::Usage(format!("bad grid value {text:?}: {e}")))?;
                grid.push((number, text.to_string()));
            }
        }
        (None, Some(a), Some(b), Some(s)) => {
            if s <= 0.0 || b < a {
                return Err(CliError::Usage(
                    "range grid needs step > 0 and --to >= --from".into(),
                ));
            }
            let mut x = a;
            while x <= b + 1e-9 * s {
                grid.push((x, format!("{x}")));
                x += s;
            }
        }
        _ => {
            return Err(CliError::Usage(
                "give either --values or all of --from/--to/--step".into(),
            ))
        }
    }
    if grid.is_empty() {
        return Err(CliError::Usage("empty grid".into()));
    }
    grid.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    grid.dedup_by(|a, b| a.0 == b.0);
    Ok(grid.into_iter().map(|(_, text)| text).collect())
}

fn run_sweep(
    common: &CommonArgs,
    param: &str,
    values: &Option<String>,
    from: Option<f64>,
    to: Option<f64>,
    step: Option<f64>,
    methods: &[Method],
) -> Result<(), CliError> {
    let base = load_config(common)?;
    let grid = parse_grid(values, from, to, step)?;
    // Every grid point must produce a valid config before any work runs.
    let mut points = Vec::new();
    for value in &grid {
        let mut cfg = base.clone();
        cfg.set_key(param, value)?;
        cfg.validate()?;
        for method in methods {
            method.check(&cfg)?;
        }
        points.push(cfg);
    }
    eprintln!("sweep: {param} over {} points", points.len());
    let methods = methods.to_vec();
    let samples = common.samples;
    let seed = common.seed;
    let timing = common.timing;
    // Points run on the worker pool; collect keeps grid order.
    let blocks: Vec<Vec<Line>> = points
        .par_iter()
        .enumerate()
        .map(|(i, cfg)| {
            let mut rows = Vec::new();
            for (m, method) in methods.iter().enumerate() {
                rows.extend(coverage_rows(
                    cfg,
                    *method,
                    param,
                    &grid[i],
                    samples,
                    splitmix(seed, (i * methods.len() + m) as u64),
                    timing,
                ));
            }
            eprintln!("sweep: finished {param}={}", grid[i]);
            rows
        })
        .collect();
    emit(common, &blocks.into_iter().flatten().collect::<Vec<_>>())
}

/// Reference carrier rows: (GHz, LOS exponent, NLOS exponent, array size).
const CARRIER_ROWS: [(f64, f64, f64, u32); 4] = [
    (28.0, 2.0, 3.0, 10),
    (38.0, 2.0, 3.71, 20),
    (60.0, 2.25, 3.76, 40),
    (73.0, 2.0, 3.4, 80),
];

fn carrier_cfg(base: &NetworkConfig, row: (f64, f64, f64, u32)) -> Result<NetworkConfig, CliError> {
    let (ghz, a_los, a_nlos, antennas) = row;
    let mut cfg = base.clone();
    cfg.set_key("carrier_ghz", &format!("{ghz}"))?;
    cfg.alpha_los = a_los;
    cfg.alpha_nlos = a_nlos;
    cfg.antennas = antennas;
    cfg.validate()?;
    Ok(cfg)
}

fn run_compare_freq(common: &CommonArgs, noise_dbm: &[f64]) -> Result<(), CliError> {
    let base = load_config(common)?;
    let mut lines = Vec::new();
    for &dbm in noise_dbm {
        if noise_dbm.len() > 1 {
            lines.push(Line::Comment(format!("noise_dbm = {dbm}")));
        }
        let mut scores: Vec<(f64, f64, f64)> = Vec::new();
        for row in CARRIER_ROWS {
            eprintln!("compare-freq: {} GHz at {dbm} dBm", row.0);
            let mut cfg = carrier_cfg(&base, row)?;
            cfg.set_key("noise_dbm", &format!("{dbm}"))?;
            // Wider arrays narrow the beam; the offset average needs more
            // nodes to resolve it. An explicit --n2 wins.
            if common.n2.is_none() {
                cfg.quad.n2 = cfg.quad.n2.max(4 * row.3 as usize);
            }
            let near = coverage(&cfg, Role::Near, AnalysisMode::Theorem).value;
            let far = coverage(&cfg, Role::Far, AnalysisMode::Theorem).value;
            scores.push((row.0, near, far));
            for (role, result) in [("near", near), ("far", far)] {
                lines.push(Line::Row {
                    param: "carrier_ghz".into(),
                    value: format!("{}", row.0),
                    scheme: scheme_label(cfg.scheme),
                    role,
                    method: "theorem",
                    result,
                    half_width: 0.0,
                    runtime_ms: 0,
                });
            }
        }
        for (role, pick) in [("near", 1usize), ("far", 2usize)] {
            let mut ranked = scores.clone();
            ranked.sort_by(|a, b| {
                let (x, y) = if pick == 1 { (a.1, b.1) } else { (a.2, b.2) };
                y.partial_cmp(&x).unwrap()
            });
            let order: Vec<String> = ranked.iter().map(|r| format!("{}", r.0)).collect();
            lines.push(Line::Comment(format!(
                "ranking {role} @ {dbm} dBm: {} GHz",
                order.join(" > ")
            )));
        }
    }
    emit(common, &lines)
}

fn run_validate(common: &CommonArgs) -> Result<ExitCode, CliError> {
    let base = load_config(common)?;
    let grid = [-90.0, -70.0, -50.0, -30.0];
    let mut all_ok = true;
    let mut report = String::new();
    for (i, &dbm) in grid.iter().enumerate() {
        eprintln!("validate: {dbm} dBm ({}/{})", i + 1, grid.len());
        let mut cfg = base.clone();
        cfg.set_key("noise_dbm", &format!("{dbm}"))?;
        cfg.validate()?;
        let mc = mc_coverage_all(&cfg, common.samples, splitmix(common.seed, i as u64));
        let users = cfg.users();
        let mut far_cfg = cfg.clone();
        // The far theorem needs a fine beam average by default; an explicit
        // --n2 wins so quick runs stay quick.
        if common.n2.is_none() {
            far_cfg.quad.n2 = far_cfg.quad.n2.max(400);
        }
        let checks = [
            ("fnrf/near", SelectionScheme::Fnrf { k: 1 }, Role::Near, mc.fnrf_near),
            ("fnrf/far", SelectionScheme::Fnrf { k: 1 }, Role::Far, mc.fnrf_far),
            ("rnff/near", SelectionScheme::Rnff { j: users }, Role::Near, mc.rnff_near),
            ("rnff/far", SelectionScheme::Rnff { j: users }, Role::Far, mc.rnff_far),
        ];
        for (label, scheme, role, est) in checks {
            let mut point = if role == Role::Far { far_cfg.clone() } else { cfg.clone() };
            point.scheme = scheme;
            let analytic = coverage(&point, role, AnalysisMode::Theorem).value;
            let tol = 0.02f64.max(3.0 * est.half_width);
            let diff = (analytic - est.mean).abs();
            let ok = diff <= tol;
            all_ok &= ok;
            report.push_str(&format!(
                "{} {label} @ {dbm} dBm: analytic {analytic:.4} simulated {:.4} (tol {tol:.4})\n",
                if ok { "ok  " } else { "FAIL" },
                est.mean
            ));
        }
    }
    print!("{report}");
    if all_ok {
        println!("agreement suite passed");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("agreement suite FAILED");
        Ok(ExitCode::from(2))
    }
}

const NOISE_GRID: [f64; 7] = [-90.0, -80.0, -70.0, -60.0, -50.0, -40.0, -30.0];

fn with_scheme(base: &NetworkConfig, scheme: SelectionScheme) -> NetworkConfig {
    let mut cfg = base.clone();
    cfg.scheme = scheme;
    cfg
}

fn fig_out(common: &CommonArgs, default_name: &str) -> CommonArgs {
    let mut c = common.clone();
    if c.out.is_none() {
        c.out = Some(PathBuf::from(default_name));
    }
    c
}

fn run_fig2(common: &CommonArgs, role: Role, name: &str) -> Result<(), CliError> {
    let common = fig_out(common, name);
    let base = load_config(&common)?;
    let mut lines = Vec::new();
    let sets: &[(&str, f64, f64, f64)] = match role {
        // (label, a_near, tau_near, tau_far)
        Role::Near => &[
            ("balanced: a_near=0.4 tau_near=1 tau_far=1", 0.4, 1.0, 1.0),
            ("default: a_near=0.1 tau_near=1 tau_far=0.2", 0.1, 1.0, 0.2),
        ],
        Role::Far => &[("default: a_near=0.1 tau_near=1 tau_far=0.2", 0.1, 1.0, 0.2)],
    };
    for (label, a_near, tau_near, tau_far) in sets {
        lines.push(Line::Comment(format!("set {label}")));
        for (i, &dbm) in NOISE_GRID.iter().enumerate() {
            eprintln!("{name}: set {label}, {dbm} dBm");
            let mut cfg = base.clone();
            cfg.a_near = *a_near;
            cfg.a_far = 1.0 - *a_near;
            cfg.tau_near = *tau_near;
            cfg.tau_far = *tau_far;
            cfg.set_key("noise_dbm", &format!("{dbm}"))?;
            if role == Role::Far {
                cfg.quad.n2 = cfg.quad.n2.max(400);
            }
            cfg.validate()?;
            let users = cfg.users();
            let mc = mc_coverage_all(&cfg, common.samples, splitmix(common.seed, i as u64));
            for scheme in [SelectionScheme::Fnrf { k: 1 }, SelectionScheme::Rnff { j: users }] {
                let point = with_scheme(&cfg, scheme);
                let analytic = coverage(&point, role, AnalysisMode::Theorem).value;
                let est = match (scheme, role) {
                    (SelectionScheme::Fnrf { .. }, Role::Near) => mc.fnrf_near,
                    (SelectionScheme::Fnrf { .. }, Role::Far) => mc.fnrf_far,
                    (_, Role::Near) => mc.rnff_near,
                    (_, Role::Far) => mc.rnff_far,
                };
                let value = format!("{dbm}");
                lines.push(Line::Row {
                    param: "noise_dbm".into(),
                    value: value.clone(),
                    scheme: scheme_label(scheme),
                    role: role_label(role),
                    method: "theorem",
                    result: analytic,
                    half_width: 0.0,
                    runtime_ms: 0,
                });
                lines.push(Line::Row {
                    param: "noise_dbm".into(),
                    value,
                    scheme: scheme_label(scheme),
                    role: role_label(role),
                    method: "mc",
                    result: est.mean,
                    half_width: est.half_width,
                    runtime_ms: 0,
                });
            }
        }
    }
    emit(&common, &lines)
}

fn run_fig3a(common: &CommonArgs) -> Result<(), CliError> {
    let common = fig_out(common, "fig3a.csv");
    let base = load_config(&common)?;
    let mut lines = Vec::new();
    for sigma in [5.0, 10.0, 15.0, 20.0, 25.0, 30.0] {
        eprintln!("fig3a: sigma = {sigma}");
        let mut cfg = base.clone();
        cfg.a_near = 0.2;
        cfg.a_far = 0.8;
        cfg.sigma = sigma;
        cfg.quad.n2 = cfg.quad.n2.max(200);
        cfg.validate()?;
        let users = cfg.users();
        for scheme in [SelectionScheme::Fnrf { k: 1 }, SelectionScheme::Rnff { j: users }] {
            let point = with_scheme(&cfg, scheme);
            for role in [Role::Near, Role::Far] {
                lines.push(Line::Row {
                    param: "sigma_m".into(),
                    value: format!("{sigma}"),
                    scheme: scheme_label(scheme),
                    role: role_label(role),
                    method: "theorem",
                    result: coverage(&point, role, AnalysisMode::Theorem).value,
                    half_width: 0.0,
                    runtime_ms: 0,
                });
            }
        }
    }
    emit(&common, &lines)
}

fn run_fig3b(common: &CommonArgs) -> Result<(), CliError> {
    let common = fig_out(common, "fig3b.csv");
    let base = load_config(&common)?;
    let mut lines = Vec::new();
    for pairs in 1..=9usize {
        eprintln!("fig3b: pairs = {pairs}");
        let mut cfg = base.clone();
        cfg.pairs = pairs;
        cfg.sigma = 15.0;
        cfg.a_near = 0.2;
        cfg.a_far = 0.8;
        cfg.validate()?;
        for scheme in [SelectionScheme::Fnrf { k: 1 }, SelectionScheme::Rnff { j: 2 * pairs }] {
            let point = with_scheme(&cfg, scheme);
            lines.push(Line::Row {
                param: "pairs".into(),
                value: format!("{pairs}"),
                scheme: scheme_label(scheme),
                role: "near",
                method: "theorem",
                result: coverage(&point, Role::Near, AnalysisMode::Theorem).value,
                half_width: 0.0,
                runtime_ms: 0,
            });
        }
    }
    emit(&common, &lines)
}

fn run_fig4a(common: &CommonArgs) -> Result<(), CliError> {
    let common = fig_out(common, "fig4a.csv");
    let base = load_config(&common)?;
    let mut lines = Vec::new();
    for antennas in [4u32, 8, 16, 32, 64, 128] {
        eprintln!("fig4a: antennas = {antennas}");
        let mut cfg = base.clone();
        cfg.antennas = antennas;
        cfg.quad.n2 = cfg.quad.n2.max(200).max(4 * antennas as usize);
        cfg.validate()?;
        for role in [Role::Near, Role::Far] {
            lines.push(Line::Row {
                param: "antennas".into(),
                value: format!("{antennas}"),
                scheme: scheme_label(cfg.scheme),
                role: role_label(role),
                method: "theorem",
                result: coverage(&cfg, role, AnalysisMode::Theorem).value,
                half_width: 0.0,
                runtime_ms: 0,
            });
        }
    }
    emit(&common, &lines)
}

fn run_fig4b(common: &CommonArgs) -> Result<(), CliError> {
    let mut common = fig_out(common, "fig4b.csv");
    if common.n2.is_none() {
        common.n2 = Some(400);
    }
    run_compare_freq(&common, &[-50.0])
}

fn rate_requirement(cfg: &NetworkConfig) -> RateRequirement {
    RateRequirement::new(100e6, 30e6, cfg.bandwidth)
}

fn fig5_cfg(base: &NetworkConfig, far_rank: usize, n2_floor: usize) -> Result<NetworkConfig, CliError> {
    let mut cfg = base.clone();
    cfg.pairs = 4;
    cfg.a_near = 0.4;
    cfg.a_far = 0.6;
    cfg.scheme = SelectionScheme::Fnff { k: 1, j: far_rank };
    cfg.quad.n2 = cfg.quad.n2.max(n2_floor);
    cfg.validate()?;
    Ok(cfg)
}

fn run_fig5a(common: &CommonArgs) -> Result<(), CliError> {
    let common = fig_out(common, "fig5a.csv");
    let base = load_config(&common)?;
    let mut lines = Vec::new();
    for far_rank in [2usize, 8] {
        lines.push(Line::Comment(format!("pair ranks (1, {far_rank})")));
        for &dbm in &NOISE_GRID {
            eprintln!("fig5a: far rank {far_rank}, {dbm} dBm");
            let mut cfg = fig5_cfg(&base, far_rank, 200)?;
            cfg.set_key("noise_dbm", &format!("{dbm}"))?;
            let req = rate_requirement(&cfg);
            let value = format!("{dbm}");
            lines.push(Line::Row {
                param: "noise_dbm".into(),
                value: value.clone(),
                scheme: "fnff",
                role: "system",
                method: "theorem",
                result: system_rate_noma(&cfg, req),
                half_width: 0.0,
                runtime_ms: 0,
            });
            lines.push(Line::Row {
                param: "noise_dbm".into(),
                value,
                scheme: "oma",
                role: "system",
                method: "theorem",
                result: system_rate_oma(&cfg, req),
                half_width: 0.0,
                runtime_ms: 0,
            });
        }
    }
    emit(&common, &lines)
}

fn run_fig5b(common: &CommonArgs) -> Result<(), CliError> {
    let common = fig_out(common, "fig5b.csv");
    let base = load_config(&common)?;
    let mut lines = Vec::new();
    for antennas in [4u32, 8, 16, 32, 64, 128] {
        eprintln!("fig5b: antennas = {antennas}");
        let mut cfg = fig5_cfg(&base, 2, 200.max(4 * antennas as usize))?;
        cfg.antennas = antennas;
        cfg.validate()?;
        let req = rate_requirement(&cfg);
        let value = format!("{antennas}");
        lines.push(Line::Row {
            param: "antennas".into(),
            value: value.clone(),
            scheme: "fnff",
            role: "system",
            method: "theorem",
            result: system_rate_noma(&cfg, req),
            half_width: 0.0,
            runtime_ms: 0,
        });
        lines.push(Line::Row {
            param: "antennas".into(),
            value,
            scheme: "oma",
            role: "system",
            method: "theorem",
            result: system_rate_oma(&cfg, req),
            half_width: 0.0,
            runtime_ms: 0,
        });
    }
    emit(&common, &lines)
}

fn run_fig6(common: &CommonArgs) -> Result<(), CliError> {
    let common = fig_out(common, "fig6.csv");
    let base = load_config(&common)?;
    let mut lines = Vec::new();
    let eval = |n1: usize, n2: usize| -> Result<f64, CliError> {
        let mut cfg = base.clone();
        cfg.scheme = SelectionScheme::Rnff { j: cfg.users() };
        cfg.quad.n1 = n1;
        cfg.quad.n2 = n2;
        cfg.validate()?;
        Ok(coverage(&cfg, Role::Far, AnalysisMode::Special1).value)
    };
    for n1 in [1usize, 2, 5, 10, 20] {
        eprintln!("fig6: n1 = {n1}");
        lines.push(Line::Row {
            param: "n1".into(),
            value: format!("{n1}"),
            scheme: "rnff",
            role: "far",
            method: "special1",
            result: eval(n1, 50)?,
            half_width: 0.0,
            runtime_ms: 0,
        });
    }
    for n2 in [10usize, 25, 50, 100, 200] {
        eprintln!("fig6: n2 = {n2}");
        lines.push(Line::Row {
            param: "n2".into(),
            value: format!("{n2}"),
            scheme: "rnff",
            role: "far",
            method: "special1",
            result: eval(10, n2)?,
            half_width: 0.0,
            runtime_ms: 0,
        });
    }
    emit(&common, &lines)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match &cli.cmd {
        Cmd::Eval { common, methods } => run_eval(common, methods)?,
        Cmd::Sweep {
            common,
            param,
            values,
            from,
            to,
            step,
            methods,
        } => run_sweep(common, param, values, *from, *to, *step, methods)?,
        Cmd::CompareFreq { common, noise_dbm } => run_compare_freq(common, noise_dbm)?,
        Cmd::Validate { common } => return run_validate(common),
        Cmd::Fig2a { common } => run_fig2(common, Role::Near, "fig2a.csv")?,
        Cmd::Fig2b { common } => run_fig2(common, Role::Far, "fig2b.csv")?,
        Cmd::Fig3a { common } => run_fig3a(common)?,
        Cmd::Fig3b { common } => run_fig3b(common)?,
        Cmd::Fig4a { common } => run_fig4a(common)?,
        Cmd::Fig4b { common } => run_fig4b(common)?,
        Cmd::Fig5a { common } => run_fig5a(common)?,
        Cmd::Fig5b { common } => run_fig5b(common)?,
        Cmd::Fig6 { common } => run_fig6(common)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests are not errors.
            let benign = matches!(
                err.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = err.print();
            return if benign { ExitCode::SUCCESS } else { ExitCode::FAILURE };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}
