//! Randomized invariants: beam-gain bounds and symmetry, Laplace transform
//! range and monotonicity, ordered-distance distribution shape, kernel
//! bounds, config round-trips, and threshold algebra.

use mmnoma::config::{
    intercept_from_carrier, NetworkConfig, SelectionScheme,
};
use mmnoma::geometry::ordered_cdf;
use mmnoma::special::fejer_gain;
use mmnoma::throughput::rate_to_threshold;
use mmnoma::{theta_kernel, Branch, LaplaceEvaluator, LaplaceMode};
use proptest::prelude::*;

fn arb_cfg() -> impl Strategy<Value = NetworkConfig> {
    (
        (2.0f64..30.0, 1usize..=5, prop::sample::select(vec![4u32, 8, 10, 16, 32, 64])),
        (0.0f64..3.0, 0.05f64..0.8, 0.05f64..0.45),
        (28u64..=100, -10.0f64..-7.0, 50.0f64..200.0),
        prop::sample::select(vec![0u8, 1, 2]),
    )
        .prop_map(|((sigma, pairs, antennas), (tau_near, tau_far, a_near), (ghz, log_noise, r_los), scheme_pick)| {
            let mut cfg = NetworkConfig::defaults();
            cfg.sigma = sigma;
            cfg.pairs = pairs;
            cfg.antennas = antennas;
            cfg.tau_near = tau_near;
            cfg.tau_far = tau_far;
            cfg.a_near = a_near;
            cfg.a_far = 1.0 - a_near;
            cfg.carrier_hz = ghz as f64 * 1e9;
            cfg.c_los = intercept_from_carrier(cfg.carrier_hz);
            cfg.c_nlos = cfg.c_los;
            cfg.noise = 10f64.powf(log_noise);
            cfg.r_los = r_los;
            cfg.scheme = match scheme_pick {
                0 => SelectionScheme::Fnrf { k: 1 },
                1 => SelectionScheme::Rnff { j: cfg.users() },
                _ => SelectionScheme::Fnff { k: 1, j: cfg.users() },
            };
            cfg.quad.n2 = 16;
            cfg.validate().expect("strategy produces valid configs");
            cfg
        })
}

proptest! {
    #![proptest_config(ProptestConfig {
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn beam_gain_bounded_periodic_even(delta in -4.0f64..4.0, m in 1u32..=128) {
        let g = fejer_gain(delta, m);
        prop_assert!(g >= 0.0 && g <= 1.0 + 1e-12, "gain {g} out of range");
        prop_assert!((g - fejer_gain(delta + 2.0, m)).abs() < 1e-9);
        prop_assert!((g - fejer_gain(-delta, m)).abs() < 1e-12);
    }

    #[test]
    fn ordered_cdf_behaves_like_a_distribution(
        pairs in 1usize..=6,
        rank_pick in 0usize..64,
        sigma in 1.0f64..50.0,
        r_lo in 0.0f64..1.0,
        r_step in 0.0f64..1.0,
    ) {
        let users = 2 * pairs;
        let i = 1 + rank_pick % users;
        let r1 = 6.0 * sigma * r_lo;
        let r2 = r1 + 6.0 * sigma * r_step;
        let f1 = ordered_cdf(i, r1, pairs, sigma);
        let f2 = ordered_cdf(i, r2, pairs, sigma);
        prop_assert!(f1 >= -1e-12 && f1 <= 1.0 + 1e-12);
        prop_assert!(f2 + 1e-12 >= f1, "cdf decreased: {f1} -> {f2}");
        prop_assert!(ordered_cdf(i, 0.0, pairs, sigma).abs() < 1e-15);
        if i < users {
            // A closer rank is stochastically smaller.
            prop_assert!(ordered_cdf(i, r2, pairs, sigma) + 1e-12 >= ordered_cdf(i + 1, r2, pairs, sigma));
        }
    }

    #[test]
    fn kernel_stays_in_unit_interval_and_decreases_in_threshold(
        r in 0.1f64..300.0,
        tau in 0.0f64..5.0,
        extra in 0.0f64..3.0,
        beta in 0.05f64..1.0,
        nlos in proptest::bool::ANY,
    ) {
        let cfg = NetworkConfig::defaults();
        let lap = LaplaceEvaluator::new(&cfg, LaplaceMode::Unity);
        let branch = if nlos { Branch::Nlos } else { Branch::Los };
        let v = theta_kernel(r, tau, beta, branch, &cfg, &lap);
        prop_assert!(v >= -1e-9 && v <= 1.0 + 1e-9, "kernel {v} out of range");
        let w = theta_kernel(r, tau + extra, beta, branch, &cfg, &lap);
        prop_assert!(w <= v + 1e-12, "kernel rose with the threshold: {v} -> {w}");
    }

    #[test]
    fn config_toml_round_trip(cfg in arb_cfg()) {
        let text = cfg.to_toml_string();
        let back = NetworkConfig::from_toml_str(&text).expect("rendered config parses");
        prop_assert_eq!(cfg, back);
    }

    #[test]
    fn halving_bandwidth_compounds_the_threshold(
        rate in 1e6f64..2e8,
        bandwidth in 1e7f64..2e8,
    ) {
        let full = rate_to_threshold(rate, bandwidth);
        let half = rate_to_threshold(rate, bandwidth / 2.0);
        let compound = (1.0 + full) * (1.0 + full) - 1.0;
        prop_assert!((half - compound).abs() <= 1e-12 * compound.max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig {
        cases: 32,
        failure_persistence: None,
        ..ProptestConfig::default()
    })]

    #[test]
    fn laplace_transform_in_unit_interval_and_nonincreasing(
        cfg in arb_cfg(),
        log_s in 6.0f64..12.0,
        factor in 1.1f64..10.0,
    ) {
        let lap = LaplaceEvaluator::with_order(&cfg, LaplaceMode::Full, 64);
        let s1 = 10f64.powf(log_s);
        let s2 = s1 * factor;
        let l1 = lap.eval(s1);
        let l2 = lap.eval(s2);
        prop_assert!(l1 > 0.0 && l1 <= 1.0, "transform {l1} out of range");
        prop_assert!(l2 <= l1 + 1e-12, "transform rose with s: {l1} -> {l2}");
    }
}
