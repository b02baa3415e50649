//! Shared fixtures for the criterion benchmarks.

use specker_core::joint_measurability::PAIRS;
use specker_core::qubit_algebra::{NoisyObservable, QubitState, UnitAxis, Vec3};
use specker_core::{JointParams, JointPovm, MeasurementTriple};

pub const TRINE_COSINES: [f64; 3] = [-0.5, -0.5, -0.5];

pub fn trine_observables(eta: f64) -> [NoisyObservable; 3] {
    MeasurementTriple::trine_zx(eta)
        .expect("valid sharpness")
        .observables()
}

pub fn trine_optimal_params() -> JointParams {
    JointParams::new(7.0 / 9.0, Vec3::new(0.0, 13f64.sqrt() / 9.0, 0.0))
}

pub fn trine_optimal_joints() -> [JointPovm; 3] {
    let obs = trine_observables(2.0 / 3.0);
    let p = trine_optimal_params();
    PAIRS.map(|(i, j)| {
        specker_core::joint_povm::construct_joint(&obs[i], &obs[j], &p)
            .expect("boundary-optimal parameters are valid")
    })
}

pub fn optimal_state() -> QubitState {
    QubitState::pure(UnitAxis::Y)
}
