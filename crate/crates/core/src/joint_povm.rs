//! Four-outcome joint measurements for a pair of unsharp observables with a
//! shared sharpness.
//!
//! The family marginalizing to `{E^i_±}` and `{E^j_±}` is parameterized by a
//! scalar `alpha` and a vector `a`:
//!
//! ```text
//! G_++ = [ (alpha/2) I + sigma . (eta (n_i + n_j) - a) / 2 ] / 2
//! G_+- = [ (1 - alpha/2) I + sigma . (eta (n_i - n_j) + a) / 2 ] / 2
//! G_-+ = [ (1 - alpha/2) I + sigma . (eta (-n_i + n_j) + a) / 2 ] / 2
//! G_-- = [ (alpha/2) I + sigma . (eta (-n_i - n_j) - a) / 2 ] / 2
//! ```
//!
//! All four are valid effects exactly when
//! `sqrt(2 eta^2 (1 + n_i.n_j) + |a|^2 + 2 eta |(n_i + n_j).a|) <= alpha` and
//! `alpha <= 2 - sqrt(2 eta^2 (1 - n_i.n_j) + |a|^2 + 2 eta |(n_i - n_j).a|)`.
//! The anticorrelation effect is `G_+- + G_-+ = (1 - alpha/2) I + sigma.a / 2`.

use thiserror::Error;

use crate::qubit_algebra::{NoisyObservable, QubitEffect, Vec3, TOL_ALG};

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum JointPovmError {
    #[error("observables must share one sharpness, got {eta_i} and {eta_j}")]
    MismatchedSharpness { eta_i: f64, eta_j: f64 },
    #[error(
        "joint parameters outside the validity window [{alpha_min:.6}, {alpha_max:.6}]: \
         alpha = {alpha:.6} violates the lower bound by {lower_violation:.3e} \
         and the upper bound by {upper_violation:.3e}"
    )]
    InvalidJointParams {
        alpha: f64,
        alpha_min: f64,
        alpha_max: f64,
        lower_violation: f64,
        upper_violation: f64,
    },
}

/// Free parameters `(alpha, a)` of the joint-measurement family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointParams {
    pub alpha: f64,
    pub a: Vec3,
}

impl JointParams {
    pub const fn new(alpha: f64, a: Vec3) -> Self {
        JointParams { alpha, a }
    }
}

/// The four joint effects, indexed by the outcome pair `(X_i, X_j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointPovm {
    pub g_pp: QubitEffect,
    pub g_pm: QubitEffect,
    pub g_mp: QubitEffect,
    pub g_mm: QubitEffect,
}

impl JointPovm {
    pub fn effects(&self) -> [QubitEffect; 4] {
        [self.g_pp, self.g_pm, self.g_mp, self.g_mm]
    }
}

/// The interval of `alpha` for which all four joint effects are valid, given
/// the anticorrelation vector `a`. May be empty (min > max).
pub fn validity_window(
    mi: &NoisyObservable,
    mj: &NoisyObservable,
    a: Vec3,
) -> Result<(f64, f64), JointPovmError> {
    let eta = shared_eta(mi, mj)?;
    let (ni, nj) = (mi.axis().vec(), mj.axis().vec());
    let cos = ni.dot(nj);
    let a_sq = a.norm_sq();
    let lo = (2.0 * eta * eta * (1.0 + cos) + a_sq + 2.0 * eta * (ni + nj).dot(a).abs()).sqrt();
    let hi =
        2.0 - (2.0 * eta * eta * (1.0 - cos) + a_sq + 2.0 * eta * (ni - nj).dot(a).abs()).sqrt();
    Ok((lo, hi))
}

/// Builds the joint POVM after checking the parameters against the validity
/// window (with [`TOL_ALG`] slack on both sides, so boundary-saturating
/// optimal parameters are accepted).
pub fn construct_joint(
    mi: &NoisyObservable,
    mj: &NoisyObservable,
    p: &JointParams,
) -> Result<JointPovm, JointPovmError> {
    let (alpha_min, alpha_max) = validity_window(mi, mj, p.a)?;
    let lower_violation = (alpha_min - p.alpha).max(0.0);
    let upper_violation = (p.alpha - alpha_max).max(0.0);
    if lower_violation > TOL_ALG || upper_violation > TOL_ALG {
        return Err(JointPovmError::InvalidJointParams {
            alpha: p.alpha,
            alpha_min,
            alpha_max,
            lower_violation,
            upper_violation,
        });
    }

    let eta = mi.eta();
    let (ni, nj) = (mi.axis().vec(), mj.axis().vec());
    let half = 0.5;
    let correlated = p.alpha / 2.0;
    let anticorrelated = 1.0 - p.alpha / 2.0;
    Ok(JointPovm {
        g_pp: QubitEffect::new(correlated, half * (eta * (ni + nj) - p.a)),
        g_pm: QubitEffect::new(anticorrelated, half * (eta * (ni - nj) + p.a)),
        g_mp: QubitEffect::new(anticorrelated, half * (eta * (-ni + nj) + p.a)),
        g_mm: QubitEffect::new(correlated, half * (eta * (-ni - nj) - p.a)),
    })
}

/// `G_+- + G_-+`, the effect whose expectation is the anticorrelation
/// probability. Equals `(2 - alpha, a)` in the `(c, v)` encoding.
pub fn anticorrelation_effect(g: &JointPovm) -> QubitEffect {
    g.g_pm + g.g_mp
}

/// True iff the four marginal identities hold within [`TOL_ALG`]:
/// row sums give `E^i_±`, column sums give `E^j_±`.
pub fn check_marginals(g: &JointPovm, mi: &NoisyObservable, mj: &NoisyObservable) -> bool {
    let (ei_p, ei_m) = mi.effects();
    let (ej_p, ej_m) = mj.effects();
    (g.g_pp + g.g_pm).approx_eq(&ei_p, TOL_ALG)
        && (g.g_mp + g.g_mm).approx_eq(&ei_m, TOL_ALG)
        && (g.g_pp + g.g_mp).approx_eq(&ej_p, TOL_ALG)
        && (g.g_pm + g.g_mm).approx_eq(&ej_m, TOL_ALG)
}

fn shared_eta(mi: &NoisyObservable, mj: &NoisyObservable) -> Result<f64, JointPovmError> {
    if (mi.eta() - mj.eta()).abs() > TOL_ALG {
        return Err(JointPovmError::MismatchedSharpness {
            eta_i: mi.eta(),
            eta_j: mj.eta(),
        });
    }
    Ok(mi.eta())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qubit_algebra::{Povm, QubitEffect, UnitAxis};

    fn trine_pair(eta: f64) -> (NoisyObservable, NoisyObservable) {
        let s = 3f64.sqrt() / 2.0;
        (
            NoisyObservable::new(UnitAxis::Z, eta).unwrap(),
            NoisyObservable::new(UnitAxis::new(s, 0.0, -0.5).unwrap(), eta).unwrap(),
        )
    }

    fn trine_optimal_params() -> JointParams {
        JointParams::new(7.0 / 9.0, Vec3::new(0.0, 13f64.sqrt() / 9.0, 0.0))
    }

    #[test]
    fn trine_optimal_params_are_valid() {
        let (mi, mj) = trine_pair(2.0 / 3.0);
        let g = construct_joint(&mi, &mj, &trine_optimal_params()).unwrap();
        assert!(g.effects().iter().all(QubitEffect::is_valid));
        assert!(Povm::new(g.effects().to_vec()).is_valid());
        assert!(check_marginals(&g, &mi, &mj));
    }

    #[test]
    fn trine_window_degenerates_to_a_point() {
        // At eta = 2/3 with |a| = sqrt(13)/9 perpendicular to the plane, the
        // window collapses onto alpha = 7/9 from both sides.
        let (mi, mj) = trine_pair(2.0 / 3.0);
        let (lo, hi) = validity_window(&mi, &mj, trine_optimal_params().a).unwrap();
        assert!((lo - 7.0 / 9.0).abs() < 1e-12);
        assert!((hi - 7.0 / 9.0).abs() < 1e-12);
    }

    #[test]
    fn zero_sharpness_gives_coin_flips() {
        let mi = NoisyObservable::new(UnitAxis::Z, 0.0).unwrap();
        let mj = NoisyObservable::new(UnitAxis::X, 0.0).unwrap();
        let g = construct_joint(&mi, &mj, &JointParams::new(1.0, Vec3::ZERO)).unwrap();
        for e in g.effects() {
            assert!(e.approx_eq(&QubitEffect::new(0.5, Vec3::ZERO), TOL_ALG));
        }
    }

    #[test]
    fn window_with_zero_a_closed_form() {
        // (sqrt(2) eta sqrt(1 + cos), 2 - sqrt(2) eta sqrt(1 - cos))
        let eta = 0.55;
        let mi = NoisyObservable::new(UnitAxis::Z, eta).unwrap();
        let mj = NoisyObservable::new(UnitAxis::from_polar(1.1, 0.0), eta).unwrap();
        let cos = mi.axis().dot(mj.axis());
        let (lo, hi) = validity_window(&mi, &mj, Vec3::ZERO).unwrap();
        let root2 = 2f64.sqrt();
        assert!((lo - root2 * eta * (1.0 + cos).sqrt()).abs() < 1e-12);
        assert!((hi - (2.0 - root2 * eta * (1.0 - cos).sqrt())).abs() < 1e-12);
    }

    #[test]
    fn antiparallel_sharp_pair_pins_alpha_to_zero() {
        // eta = 1 with n_j = -n_i: the window is the single point alpha = 0
        // and the joint measurement reduces to {0, P+, P-, 0}.
        let mi = NoisyObservable::new(UnitAxis::Z, 1.0).unwrap();
        let mj = NoisyObservable::new(UnitAxis::new(0.0, 0.0, -1.0).unwrap(), 1.0).unwrap();
        let (lo, hi) = validity_window(&mi, &mj, Vec3::ZERO).unwrap();
        assert!(lo.abs() < 1e-12 && hi.abs() < 1e-12);
        let g = construct_joint(&mi, &mj, &JointParams::new(0.0, Vec3::ZERO)).unwrap();
        assert!(g
            .g_pp
            .approx_eq(&QubitEffect::new(0.0, Vec3::ZERO), TOL_ALG));
        assert!(g
            .g_pm
            .approx_eq(&QubitEffect::new(1.0, Vec3::new(0.0, 0.0, 1.0)), TOL_ALG));
        assert!(check_marginals(&g, &mi, &mj));
    }

    #[test]
    fn invalid_params_report_slack() {
        let (mi, mj) = trine_pair(2.0 / 3.0);
        let bad = JointParams::new(0.9, trine_optimal_params().a);
        match construct_joint(&mi, &mj, &bad) {
            Err(JointPovmError::InvalidJointParams {
                upper_violation,
                lower_violation,
                ..
            }) => {
                assert!(upper_violation > 0.1);
                assert!(lower_violation == 0.0);
            }
            other => panic!("expected InvalidJointParams, got {other:?}"),
        }
    }

    #[test]
    fn mismatched_sharpness_rejected() {
        let mi = NoisyObservable::new(UnitAxis::Z, 0.5).unwrap();
        let mj = NoisyObservable::new(UnitAxis::X, 0.6).unwrap();
        assert!(matches!(
            construct_joint(&mi, &mj, &JointParams::new(1.0, Vec3::ZERO)),
            Err(JointPovmError::MismatchedSharpness { .. })
        ));
    }

    #[test]
    fn anticorrelation_effect_closed_form() {
        let (mi, mj) = trine_pair(2.0 / 3.0);
        let g = construct_joint(&mi, &mj, &trine_optimal_params()).unwrap();
        let anti = anticorrelation_effect(&g);
        assert!((anti.c - (2.0 - 7.0 / 9.0)).abs() < 1e-12);
        assert!((anti.v - trine_optimal_params().a).norm() < 1e-12);

        let flat = construct_joint(
            &NoisyObservable::new(UnitAxis::Z, 0.3).unwrap(),
            &NoisyObservable::new(UnitAxis::X, 0.3).unwrap(),
            &JointParams::new(1.0, Vec3::ZERO),
        )
        .unwrap();
        let e = anticorrelation_effect(&flat);
        assert!(e.approx_eq(&QubitEffect::new(1.0, Vec3::ZERO), TOL_ALG));
    }

    #[test]
    fn perturbed_effect_breaks_marginals() {
        let (mi, mj) = trine_pair(2.0 / 3.0);
        let mut g = construct_joint(&mi, &mj, &trine_optimal_params()).unwrap();
        g.g_pp = QubitEffect::new(g.g_pp.c, g.g_pp.v + Vec3::new(1e-6, 0.0, 0.0));
        assert!(!check_marginals(&g, &mi, &mj));
    }

    #[test]
    fn swap_symmetry() {
        // G^{ji} with outcomes transposed equals G^{ij} at the same (alpha, a).
        let (mi, mj) = trine_pair(0.7);
        let p = JointParams::new(0.75, Vec3::new(0.0, 0.2, 0.0));
        let g_ij = construct_joint(&mi, &mj, &p).unwrap();
        let g_ji = construct_joint(&mj, &mi, &p).unwrap();
        assert!(g_ji.g_pp.approx_eq(&g_ij.g_pp, TOL_ALG));
        assert!(g_ji.g_pm.approx_eq(&g_ij.g_mp, TOL_ALG));
        assert!(g_ji.g_mp.approx_eq(&g_ij.g_pm, TOL_ALG));
        assert!(g_ji.g_mm.approx_eq(&g_ij.g_mm, TOL_ALG));
    }

    #[test]
    fn outcome_vector_identities() {
        // The per-outcome Bloch vectors recombine to eta * n_i and eta * n_j.
        let (mi, mj) = trine_pair(0.71);
        let p = JointParams::new(0.75, Vec3::new(0.0, 0.1, 0.0));
        let g = construct_joint(&mi, &mj, &p).unwrap();
        let eta = mi.eta();
        assert!((g.g_pp.v + g.g_pm.v - eta * mi.axis().vec()).norm() < TOL_ALG);
        assert!((g.g_mp.v + g.g_mm.v + eta * mi.axis().vec()).norm() < TOL_ALG);
        assert!((g.g_pp.v + g.g_mp.v - eta * mj.axis().vec()).norm() < TOL_ALG);
        assert!((g.g_pm.v + g.g_mm.v + eta * mj.axis().vec()).norm() < TOL_ALG);
        // a_{+-} + a_{-+} = a and a_{++} + a_{--} = -a.
        assert!((g.g_pm.v + g.g_mp.v - p.a).norm() < TOL_ALG);
        assert!((g.g_pp.v + g.g_mm.v + p.a).norm() < TOL_ALG);
    }
}
