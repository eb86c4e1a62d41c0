//! The sparse-network closed forms must reproduce their parent integrals:
//! the same coverage kernels with unit interference Laplace transform,
//! integrated adaptively over the LOS disc only. Randomized feasible
//! configurations sweep cluster size, power split, thresholds, array size,
//! fading order, cluster spread, disc radius, noise, and carrier.

mod common;

use common::{
    far_fixed_parent, far_random_parent, near_fixed_parent, near_random_parent, random_sparse_cfg,
};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use mmnoma::{coverage, AnalysisMode, NetworkConfig, Role, SelectionScheme};

#[test]
fn closed_forms_match_adaptive_parents() {
    let mut rng = StdRng::seed_from_u64(0x5eed_c105);
    for trial in 0..20 {
        let mut cfg = random_sparse_cfg(&mut rng);
        let users = 2 * cfg.pairs;
        let k = rng.gen_range(1..=users.max(2) - 1);
        let j = rng.gen_range(2..=users.max(2));

        cfg.scheme = SelectionScheme::Fnrf { k };
        let near = coverage(&cfg, Role::Near, AnalysisMode::ClosedForm).value;
        let want = near_fixed_parent(&cfg, k);
        assert!(
            (near - want).abs() < 1e-4,
            "trial {trial} near fixed k={k}: closed {near} vs parent {want} ({cfg:?})"
        );
        let far = coverage(&cfg, Role::Far, AnalysisMode::ClosedForm).value;
        let want = far_random_parent(&cfg, k);
        assert!(
            (far - want).abs() < 1e-4,
            "trial {trial} far random k={k}: closed {far} vs parent {want} ({cfg:?})"
        );

        cfg.scheme = SelectionScheme::Rnff { j };
        let near = coverage(&cfg, Role::Near, AnalysisMode::ClosedForm).value;
        let want = near_random_parent(&cfg, j);
        assert!(
            (near - want).abs() < 1e-4,
            "trial {trial} near random j={j}: closed {near} vs parent {want} ({cfg:?})"
        );
        let far = coverage(&cfg, Role::Far, AnalysisMode::ClosedForm).value;
        let want = far_fixed_parent(&cfg, j);
        assert!(
            (far - want).abs() < 1e-4,
            "trial {trial} far fixed j={j}: closed {far} vs parent {want} ({cfg:?})"
        );
    }
}

#[test]
fn near_forms_depend_only_on_the_gain_intercept_product() {
    // The near-user beam is aligned, so array size enters the closed forms
    // only through the product M * C_L; trading one for the other by a
    // power of two must not move the value at all.
    let mut base = NetworkConfig::defaults();
    base.lambda_c = 0.0;
    base.alpha_los = 2.0;
    for scheme in [SelectionScheme::Fnrf { k: 1 }, SelectionScheme::Rnff { j: 4 }] {
        let mut a = base.clone();
        a.scheme = scheme;
        let mut b = a.clone();
        b.antennas *= 2;
        b.c_los *= 0.5;
        let va = coverage(&a, Role::Near, AnalysisMode::ClosedForm).value;
        let vb = coverage(&b, Role::Near, AnalysisMode::ClosedForm).value;
        assert!((va - vb).abs() < 1e-14, "{scheme:?}: {va} vs {vb}");
    }
}

#[test]
fn closed_forms_invariant_under_joint_intercept_noise_scaling() {
    // Without interference the coverage depends on C_L and the noise only
    // through their ratio; scaling both by four is a no-op.
    let mut base = NetworkConfig::defaults();
    base.lambda_c = 0.0;
    base.alpha_los = 2.0;
    for scheme in [SelectionScheme::Fnrf { k: 1 }, SelectionScheme::Rnff { j: 4 }] {
        for role in [Role::Near, Role::Far] {
            let mut a = base.clone();
            a.scheme = scheme;
            let mut b = a.clone();
            b.c_los *= 4.0;
            b.c_nlos *= 4.0;
            b.noise *= 4.0;
            let va = coverage(&a, role, AnalysisMode::ClosedForm).value;
            let vb = coverage(&b, role, AnalysisMode::ClosedForm).value;
            assert!((va - vb).abs() < 1e-14, "{scheme:?} {role:?}: {va} vs {vb}");
        }
    }
}
