//! The average-anticorrelation quantity `R3` and its noncontextual bounds.
//!
//! For three pairwise joint measurements, `R3 = (1/3) sum Tr(rho (G_+- + G_-+))`.
//! Outcome-deterministic noncontextual models bound it by 2/3; models that
//! treat the unsharp part as a noncontextual coin flip tighten this to
//! `1 - eta/3`. With the joint effects parameterized by `(alpha_ij, a_ij)`,
//! the violation condition `R3 > 1 - eta/3` is equivalent to
//! `sum alpha_ij + lambda_rho < 2 eta` where `lambda_rho = -a.r` for total
//! vector `a = sum a_ij` and Bloch vector `r`. The violation magnitudes are
//! `S = R3 - (1 - eta/3)` and `C = 6 S`.

use thiserror::Error;

use crate::joint_measurability::{MeasurementTriple, PAIRS};
use crate::joint_povm::{self, JointParams, JointPovm, JointPovmError};
use crate::qubit_algebra::{born_probability, QubitState, Vec3, TOL_ALG};

/// Outcome-deterministic (Kochen-Specker) noncontextual bound on `R3`.
pub const KS_BOUND: f64 = 2.0 / 3.0;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum LswError {
    #[error("total anticorrelation vector is zero; every state is optimal")]
    ZeroVector,
    #[error(transparent)]
    Joint(#[from] JointPovmError),
}

/// Noncontextual bound `1 - eta/3` for sharpness `eta`.
pub fn lsw_bound(eta: f64) -> f64 {
    1.0 - eta / 3.0
}

/// `R3 = (1/3) sum over pairs of Tr(rho (G_+- + G_-+))`.
pub fn r3_quantum(state: &QubitState, joints: &[JointPovm; 3]) -> f64 {
    joints
        .iter()
        .map(|g| born_probability(state, &joint_povm::anticorrelation_effect(g)))
        .sum::<f64>()
        / 3.0
}

/// The pieces of the violation condition `sum alpha + lambda_rho < 2 eta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ViolationTerms {
    pub sum_alpha: f64,
    pub a_total: Vec3,
    pub lambda_rho: f64,
    pub violated: bool,
}

/// Evaluates the violation condition for explicit joint parameters and a
/// state. `lambda_rho = -a.r` ranges over `[-|a|, |a|]` as the state varies.
pub fn violation_terms(params: &[JointParams; 3], state: &QubitState, eta: f64) -> ViolationTerms {
    let sum_alpha: f64 = params.iter().map(|p| p.alpha).sum();
    let a_total = params.iter().fold(Vec3::ZERO, |acc, p| acc + p.a);
    let lambda_rho = -a_total.dot(state.bloch());
    ViolationTerms {
        sum_alpha,
        a_total,
        lambda_rho,
        violated: sum_alpha + lambda_rho < 2.0 * eta - TOL_ALG,
    }
}

/// The pure state maximizing the violation: Bloch vector `a / |a|`, which
/// attains `lambda_rho = -|a|`. Fails when `|a|` vanishes (every state gives
/// the same `R3`; callers typically fall back to the maximally mixed state).
pub fn optimal_state(a_total: Vec3) -> Result<QubitState, LswError> {
    let norm = a_total.norm();
    if norm <= TOL_ALG {
        return Err(LswError::ZeroVector);
    }
    Ok(QubitState::new(a_total * (1.0 / norm)).expect("unit Bloch vector"))
}

/// `|cos(t12/2)| + |cos(t13/2)| + |cos(t23/2)|` for the direction
/// parameterization `n1 = z`, `n2 = (sin t12, 0, cos t12)`,
/// `n3 = (sin t13 cos p3, sin t13 sin p3, cos t13)`.
pub fn half_angle_cosine_sum(theta_12: f64, theta_13: f64, phi_3: f64) -> f64 {
    let cos_23 = theta_12.sin() * theta_13.sin() * phi_3.cos() + theta_12.cos() * theta_13.cos();
    // cos(t/2) = sqrt((1 + cos t)/2) for t in [0, pi]; clamp against rounding.
    (theta_12 / 2.0).cos().abs()
        + (theta_13 / 2.0).cos().abs()
        + ((1.0 + cos_23) / 2.0).max(0.0).sqrt()
}

/// Result of the state-independence scan: the grid minimum of the
/// three-half-angle cosine sum and where it was attained.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SiScanResult {
    pub min_value: f64,
    pub theta_12: f64,
    pub theta_13: f64,
    pub phi_3: f64,
}

/// Grids `theta_12, theta_13 in (0, pi)` (half-step offset, so the degenerate
/// boundary angles are excluded) and `phi_3 in [0, 2 pi)`, and minimizes
/// [`half_angle_cosine_sum`]. A state-independent violation would need this
/// sum below 1; on the open interior it stays strictly above 1, approaching
/// it only toward the excluded boundary.
pub fn no_si_scan(grid_resolution: usize) -> SiScanResult {
    assert!(grid_resolution >= 3, "grid resolution must be at least 3");
    let n = grid_resolution;
    let theta_step = std::f64::consts::PI / n as f64;
    let phi_step = 2.0 * std::f64::consts::PI / n as f64;
    let mut best = SiScanResult {
        min_value: f64::INFINITY,
        theta_12: f64::NAN,
        theta_13: f64::NAN,
        phi_3: f64::NAN,
    };
    for i in 0..n {
        let theta_12 = (i as f64 + 0.5) * theta_step;
        for j in 0..n {
            let theta_13 = (j as f64 + 0.5) * theta_step;
            for k in 0..n {
                let phi_3 = k as f64 * phi_step;
                let value = half_angle_cosine_sum(theta_12, theta_13, phi_3);
                if value < best.min_value {
                    best = SiScanResult {
                        min_value: value,
                        theta_12,
                        theta_13,
                        phi_3,
                    };
                }
            }
        }
    }
    // The infimum 1 is attained only at the excluded degenerate boundary.
    debug_assert!(best.min_value > 1.0);
    best
}

/// Validity slack of one pair's joint parameters against its window.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairDiagnostics {
    pub alpha: f64,
    pub a_norm: f64,
    /// `alpha - alpha_min`; nonnegative for valid parameters.
    pub lower_slack: f64,
    /// `alpha_max - alpha`; nonnegative for valid parameters.
    pub upper_slack: f64,
}

/// Full evaluation of one scenario: `R3`, both bounds, the violation in both
/// normalizations, the state-dependent term, and per-pair validity slacks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioReport {
    pub eta: f64,
    pub r3_quantum: f64,
    pub bound_ks: f64,
    pub bound_lsw: f64,
    /// `S = R3 - (1 - eta/3)`.
    pub violation_s: f64,
    /// `C = 6 S`.
    pub violation_c: f64,
    /// Strict violation per `sum alpha + lambda_rho < 2 eta` with
    /// [`TOL_ALG`] margin, so boundary scenarios report no violation.
    pub violated: bool,
    pub lambda_rho: f64,
    /// The state `R3` was evaluated on.
    pub state: QubitState,
    /// The violation-maximizing state for these parameters.
    pub optimal_state: QubitState,
    /// Set when `sum a_ij = 0`, in which case every state performs equally
    /// and `optimal_state` falls back to the maximally mixed state.
    pub optimal_state_degenerate: bool,
    pub diagnostics: [PairDiagnostics; 3],
}

/// Builds the three joint POVMs for `params` (pair order (1,2), (1,3), (2,3)),
/// evaluates `R3` on `state` (or on the optimal state when `None`), and
/// assembles the report.
pub fn scenario_report(
    triple: &MeasurementTriple,
    params: &[JointParams; 3],
    state: Option<QubitState>,
) -> Result<ScenarioReport, LswError> {
    let eta = triple.eta();
    let observables = triple.observables();

    let mut joints = Vec::with_capacity(3);
    let mut diagnostics = [PairDiagnostics {
        alpha: 0.0,
        a_norm: 0.0,
        lower_slack: 0.0,
        upper_slack: 0.0,
    }; 3];
    for (k, &(i, j)) in PAIRS.iter().enumerate() {
        let (lo, hi) = joint_povm::validity_window(&observables[i], &observables[j], params[k].a)?;
        diagnostics[k] = PairDiagnostics {
            alpha: params[k].alpha,
            a_norm: params[k].a.norm(),
            lower_slack: params[k].alpha - lo,
            upper_slack: hi - params[k].alpha,
        };
        joints.push(joint_povm::construct_joint(
            &observables[i],
            &observables[j],
            &params[k],
        )?);
    }
    let joints: [JointPovm; 3] = [joints[0], joints[1], joints[2]];

    let a_total = params.iter().fold(Vec3::ZERO, |acc, p| acc + p.a);
    let (optimal, degenerate) = match optimal_state(a_total) {
        Ok(s) => (s, false),
        Err(LswError::ZeroVector) => (QubitState::maximally_mixed(), true),
        Err(e) => return Err(e),
    };
    let state = state.unwrap_or(optimal);

    let r3 = r3_quantum(&state, &joints);
    let bound = lsw_bound(eta);
    let terms = violation_terms(params, &state, eta);

    // Both routes to the violation must agree: R3 - bound = (2 eta - sum alpha
    // - lambda) / 6 is an algebraic identity of the construction.
    debug_assert!(
        ((r3 - bound) - (2.0 * eta - terms.sum_alpha - terms.lambda_rho) / 6.0).abs() < 1e-9
    );

    Ok(ScenarioReport {
        eta,
        r3_quantum: r3,
        bound_ks: KS_BOUND,
        bound_lsw: bound,
        violation_s: r3 - bound,
        violation_c: 6.0 * (r3 - bound),
        violated: terms.violated,
        lambda_rho: terms.lambda_rho,
        state,
        optimal_state: optimal,
        optimal_state_degenerate: degenerate,
        diagnostics,
    })
}
