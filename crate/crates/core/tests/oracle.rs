//! Brute-force oracle checks for the closed-form optimum, and end-to-end
//! consistency between the optimizer and the scenario evaluation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use specker_core::joint_measurability::PAIRS;
use specker_core::lsw;
use specker_core::optimizer::{
    c_max_brute, c_max_closed_form, optimal_joint_params, optimize_eta, zx_plane_axes, EtaMode,
    GridSpec,
};
use specker_core::qubit_algebra::{QubitState, UnitAxis, Vec3};
use specker_core::{JointParams, MeasurementTriple};

const TRINE: [f64; 3] = [-0.5, -0.5, -0.5];

/// Random coplanar cosine triples: two free angles, third axis either side.
fn random_coplanar_cosines(rng: &mut impl Rng) -> [f64; 3] {
    let t12: f64 = rng.random_range(0.2..3.0);
    let t13: f64 = rng.random_range(0.2..3.0);
    let same_side = rng.random::<bool>();
    let t23 = if same_side {
        (t12 - t13).abs()
    } else {
        t12 + t13
    };
    [t12.cos(), t13.cos(), t23.cos()]
}

#[test]
fn brute_force_agrees_with_closed_form_at_trine() {
    let grid = GridSpec::default();
    let closed = c_max_closed_form(&TRINE, 0.67).unwrap();
    let brute = c_max_brute(&TRINE, 0.67, &grid).unwrap();
    assert!(
        brute <= closed + 1e-9,
        "3-D sample exceeded the closed form"
    );
    assert!((brute - closed).abs() <= 1e-3);
}

#[test]
fn brute_force_agrees_on_random_coplanar_configurations() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let grid = GridSpec::default();
    let mut tested = 0;
    while tested < 20 {
        let cosines = random_coplanar_cosines(&mut rng);
        // Stay comfortably inside pairwise compatibility.
        let eta_u = specker_core::joint_measurability::eta_upper_from_cosines(&cosines);
        let eta = rng.random_range(0.05..eta_u);
        let closed = c_max_closed_form(&cosines, eta).unwrap();
        let brute = c_max_brute(&cosines, eta, &grid).unwrap();
        assert!(
            brute <= closed + 1e-9,
            "3-D sample exceeded closed form at {cosines:?}, eta = {eta}"
        );
        assert!(
            (brute - closed).abs() <= 1e-3,
            "oracle mismatch at {cosines:?}, eta = {eta}: {brute} vs {closed}"
        );
        tested += 1;
    }
}

#[test]
fn brute_force_converges_with_grid_refinement() {
    let closed = c_max_closed_form(&TRINE, 0.7).unwrap();
    let mut last_err = f64::INFINITY;
    for points in [100, 1_000, 10_000] {
        let grid = GridSpec {
            points_per_pair: points,
            confirm_samples: 0,
            seed: 0,
        };
        let err = (c_max_brute(&TRINE, 0.7, &grid).unwrap() - closed).abs();
        assert!(err <= last_err + 1e-12);
        last_err = err;
    }
    assert!(last_err < 1e-3);
}

#[test]
fn optimizer_round_trips_through_scenario_evaluation() {
    // For optimal parameters, evaluating R3 on the optimal state must
    // reproduce bound + C/6 to high accuracy.
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for _ in 0..10 {
        let t12: f64 = rng.random_range(1.5..2.8);
        let t13: f64 =
            rng.random_range(1.5..std::f64::consts::PI.min(2.0 * std::f64::consts::PI - t12));
        let axes = zx_plane_axes(t12, t13);
        let cosines = PAIRS.map(|(i, j)| axes[i].dot(axes[j]));
        let eta_u = specker_core::joint_measurability::eta_upper_from_cosines(&cosines);
        let eta = rng.random_range(0.3..eta_u);
        let c = c_max_closed_form(&cosines, eta).unwrap();

        let params = [
            optimal_joint_params(cosines[0], eta, UnitAxis::Y).unwrap(),
            optimal_joint_params(cosines[1], eta, UnitAxis::Y).unwrap(),
            optimal_joint_params(cosines[2], eta, UnitAxis::Y).unwrap(),
        ];
        let triple = MeasurementTriple::new(axes, eta).unwrap();
        let report = lsw::scenario_report(&triple, &params, None).unwrap();
        assert!(
            (report.r3_quantum - (report.bound_lsw + c / 6.0)).abs() < 1e-9,
            "round-trip mismatch at t12={t12}, t13={t13}, eta={eta}"
        );
        assert!((report.violation_c - c).abs() < 1e-9);
    }
}

#[test]
fn trine_optimal_configuration_round_trip() {
    let triple = MeasurementTriple::trine_zx(2.0 / 3.0).unwrap();
    let params = [JointParams::new(7.0 / 9.0, Vec3::new(0.0, 13f64.sqrt() / 9.0, 0.0)); 3];
    let report =
        lsw::scenario_report(&triple, &params, Some(QubitState::pure(UnitAxis::Y))).unwrap();
    assert!((report.r3_quantum - 0.8114).abs() < 5e-5);
    assert!((report.violation_c - (13f64.sqrt() / 3.0 - 1.0)).abs() < 1e-9);
}

#[test]
fn relaxed_geometry_sweep_improves_with_resolution() {
    // Finer half-step grids land closer to the smooth relaxed optimum. (The
    // constrained landscape is sharper and its non-nested grids need not
    // improve monotonically, so only the relaxed mode is asserted here.)
    let mut last = f64::NEG_INFINITY;
    for resolution in [8, 16, 32] {
        let config =
            specker_core::optimizer::optimize_geometry(resolution, EtaMode::Relaxed).unwrap();
        assert!(config.c_max >= last - 1e-12);
        last = config.c_max;
    }
    // Close to the true trine optimum by res 32.
    assert!((last - 0.5378710714363795).abs() < 1e-3);
}

#[test]
fn trine_violation_dies_inside_the_window() {
    // With optimal parameters the violation is positive just above eta_l but
    // crosses zero near eta = 0.69813, before the window closes at eta_u.
    assert!(c_max_closed_form(&TRINE, 0.68).unwrap() > 0.0);
    assert!(c_max_closed_form(&TRINE, 0.6981).unwrap() > 0.0);
    assert!(c_max_closed_form(&TRINE, 0.6982).unwrap() < 0.0);
    assert!(c_max_closed_form(&TRINE, 0.71).unwrap() < 0.0);
}

#[test]
fn geometry_sweep_configs_round_trip() {
    for mode in [EtaMode::Relaxed, EtaMode::Constrained] {
        let config = specker_core::optimizer::optimize_geometry(16, mode).unwrap();
        let triple = MeasurementTriple::new(config.axes, config.eta).unwrap();
        let report = lsw::scenario_report(&triple, &config.params, None).unwrap();
        assert!((report.r3_quantum - (report.bound_lsw + config.c_max / 6.0)).abs() < 1e-9);
        assert!((config.s_max * 6.0 - config.c_max).abs() < 1e-12);
        assert!((report.optimal_state.bloch() - config.optimal_state.bloch()).norm() < 1e-9);
    }
}

#[test]
fn constrained_optimum_exceeds_interior_values() {
    let opt = optimize_eta(&TRINE, EtaMode::Constrained).unwrap();
    assert!(opt.open_boundary);
    for delta in [1e-3, 1e-5, 1e-7] {
        let c = c_max_closed_form(&TRINE, opt.eta_star + delta).unwrap();
        assert!(c < opt.c_star);
    }
}
