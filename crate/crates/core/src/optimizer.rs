//! Optimization of the violation `C = 2 eta - (sum alpha_ij - |a|)` over
//! joint-POVM parameters, sharpness, and coplanar measurement geometry.
//!
//! For coplanar axes the optimum takes all `a_ij` parallel to each other and
//! perpendicular to the measurement plane, with `|a_ij|` saturating the
//! compatibility bound `sqrt(1 + eta^4 (n_i.n_j)^2 - 2 eta^2)` and
//! `alpha_ij = 1 + eta^2 n_i.n_j`, giving the closed form
//!
//! ```text
//! C_max = 2 eta + sum_ij ( sqrt(1 + eta^4 c_ij^2 - 2 eta^2) - (1 + eta^2 c_ij) )
//! ```
//!
//! `c_max_brute` re-derives this maximum by direct search over feasible
//! `(alpha_ij, a_ij)`, with feasibility decided by the joint-POVM validity
//! window rather than the closed form, so the two routes stay independent.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, UnitSphere};
use rayon::prelude::*;
use thiserror::Error;

use crate::joint_measurability::{
    eta_lower_from_cosines, eta_upper_from_cosines, pairwise_margin, PAIRS,
};
use crate::joint_povm::{self, JointParams, JointPovmError};
use crate::lsw;
use crate::qubit_algebra::{AlgebraError, NoisyObservable, QubitState, UnitAxis, Vec3, TOL_ALG};

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum OptimizerError {
    #[error("pair with cos(theta) = {cos_theta} is not jointly measurable at eta = {eta} (margin {margin:.3e})")]
    IncompatiblePair {
        cos_theta: f64,
        eta: f64,
        margin: f64,
    },
    #[error("empty sharpness window: eta_lower = {eta_lower} >= eta_upper = {eta_upper}")]
    EmptyWindow { eta_lower: f64, eta_upper: f64 },
    #[error("cosines {cosines:?} do not describe a coplanar axis triple")]
    NotCoplanar { cosines: [f64; 3] },
    #[error("geometry resolution must be at least 8, got {resolution}")]
    ResolutionTooSmall { resolution: usize },
    #[error("sharpness must lie in [0, 1], got {eta}")]
    EtaOutOfRange { eta: f64 },
    #[error("cos(theta) must lie in [-1, 1], got {cos_theta}")]
    CosOutOfRange { cos_theta: f64 },
    #[error("no feasible geometry cell")]
    NoFeasibleGeometry,
    #[error(transparent)]
    Joint(#[from] JointPovmError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Which sharpness range the optimizer searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EtaMode {
    /// The Specker window `(eta_l, eta_u]`: pairwise but not triplewise
    /// jointly measurable. The supremum typically sits on the excluded
    /// boundary `eta_l` and is reported with `open_boundary` set.
    Constrained,
    /// Any pairwise-compatible sharpness `(0, eta_u]`.
    Relaxed,
}

/// Result of a sharpness optimization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaOptimum {
    pub eta_star: f64,
    pub c_star: f64,
    /// Set when the maximum is a supremum attained only in the limit
    /// `eta -> eta_l` from above; `eta_star` then reports `eta_l` itself and
    /// `c_star` the limit value.
    pub open_boundary: bool,
}

/// Resolution of the brute-force search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    /// Grid points for `|a_ij|` along the perpendicular direction, per pair.
    pub points_per_pair: usize,
    /// Random fully-3D `(a_12, a_13, a_23)` configurations checked against
    /// the perpendicular ansatz.
    pub confirm_samples: usize,
    pub seed: u64,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            points_per_pair: 10_000,
            confirm_samples: 1_000,
            seed: 0xC0FFEE,
        }
    }
}

/// A fully assembled optimal configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalConfig {
    pub eta: f64,
    pub axes: [UnitAxis; 3],
    pub params: [JointParams; 3],
    pub c_max: f64,
    pub s_max: f64,
    pub optimal_state: QubitState,
    pub open_boundary: bool,
}

/// Closed-form optimal violation for pairwise cosines `c_ij` at sharpness
/// `eta`. May be negative (no violation possible).
pub fn c_max_closed_form(cosines: &[f64; 3], eta: f64) -> Result<f64, OptimizerError> {
    check_eta(eta)?;
    let mut total = 2.0 * eta;
    for &c in cosines {
        check_cos(c)?;
        let margin = pairwise_margin(eta, c);
        if margin < -TOL_ALG {
            return Err(OptimizerError::IncompatiblePair {
                cos_theta: c,
                eta,
                margin,
            });
        }
        total += margin.max(0.0).sqrt() - (1.0 + eta * eta * c);
    }
    Ok(total)
}

/// The violation-maximizing joint parameters for one pair:
/// `alpha = 1 + eta^2 cos` and `a` perpendicular to the measurement plane
/// with `|a| = sqrt(1 + eta^4 cos^2 - 2 eta^2)` (the compatibility bound).
pub fn optimal_joint_params(
    cos_ij: f64,
    eta: f64,
    plane_normal: UnitAxis,
) -> Result<JointParams, OptimizerError> {
    check_eta(eta)?;
    check_cos(cos_ij)?;
    let margin = pairwise_margin(eta, cos_ij);
    if margin < -TOL_ALG {
        return Err(OptimizerError::IncompatiblePair {
            cos_theta: cos_ij,
            eta,
            margin,
        });
    }
    Ok(JointParams::new(
        1.0 + eta * eta * cos_ij,
        plane_normal.vec() * margin.max(0.0).sqrt(),
    ))
}

/// Brute-force maximum of `C = 2 eta - sum alpha_ij + |sum a_ij|` over
/// parameters feasible per the joint-POVM validity window.
///
/// The main search runs over the perpendicular one-parameter family
/// (`a_ij = t n_perp`, `alpha_ij` at the lower window edge, where `C` is
/// largest since it decreases in every `alpha_ij`). A seeded sample of fully
/// 3-dimensional `a_ij` directions confirms that leaving the perpendicular
/// family never improves the result. Requires a coplanar cosine triple.
pub fn c_max_brute(cosines: &[f64; 3], eta: f64, grid: &GridSpec) -> Result<f64, OptimizerError> {
    check_eta(eta)?;
    let (axes, normal) = realize_coplanar(cosines)?;
    let observables = [
        NoisyObservable::new(axes[0], eta)?,
        NoisyObservable::new(axes[1], eta)?,
        NoisyObservable::new(axes[2], eta)?,
    ];

    // Perpendicular family, separable per pair: with every a_ij = t_ij n_perp
    // and t_ij >= 0, |sum a_ij| = sum t_ij, so each pair contributes
    // max_t (t - alpha_min(t)) independently.
    let mut best = 2.0 * eta;
    let points = grid.points_per_pair.max(2);
    for (i, j) in PAIRS {
        let mut pair_best = f64::NEG_INFINITY;
        for k in 0..points {
            let t = 1.2 * k as f64 / (points - 1) as f64;
            let (lo, hi) =
                joint_povm::validity_window(&observables[i], &observables[j], t * normal.vec())?;
            if lo <= hi + TOL_ALG {
                pair_best = pair_best.max(t - lo);
            }
        }
        if pair_best == f64::NEG_INFINITY {
            let c = axes[i].dot(axes[j]);
            return Err(OptimizerError::IncompatiblePair {
                cos_theta: c,
                eta,
                margin: pairwise_margin(eta, c),
            });
        }
        best += pair_best;
    }

    // 3-D confirmation sample: random directions and magnitudes per pair.
    let mut rng = ChaCha8Rng::seed_from_u64(grid.seed);
    for _ in 0..grid.confirm_samples {
        let mut sum_alpha = 0.0;
        let mut a_total = Vec3::ZERO;
        let mut feasible = true;
        for (i, j) in PAIRS {
            let dir: [f64; 3] = UnitSphere.sample(&mut rng);
            let t: f64 = rng.random_range(0.0..1.1);
            let a = Vec3::new(dir[0], dir[1], dir[2]) * t;
            let (lo, hi) = joint_povm::validity_window(&observables[i], &observables[j], a)?;
            if lo > hi + TOL_ALG {
                feasible = false;
                break;
            }
            sum_alpha += lo;
            a_total = a_total + a;
        }
        if feasible {
            best = best.max(2.0 * eta - sum_alpha + a_total.norm());
        }
    }
    Ok(best)
}

/// Maximizes the closed-form `C` over sharpness.
///
/// Constrained mode searches the Specker window `(eta_l, eta_u]`; when the
/// best value sits at the excluded left end the result carries the limit
/// value with `open_boundary` set. Relaxed mode searches all of `(0, eta_u]`.
pub fn optimize_eta(cosines: &[f64; 3], mode: EtaMode) -> Result<EtaOptimum, OptimizerError> {
    let eta_l = eta_lower_from_cosines(cosines);
    let eta_u = eta_upper_from_cosines(cosines);
    let objective = |eta: f64| c_max_closed_form(cosines, eta).unwrap_or(f64::NEG_INFINITY);
    match mode {
        EtaMode::Constrained => {
            if eta_l >= eta_u {
                return Err(OptimizerError::EmptyWindow {
                    eta_lower: eta_l,
                    eta_upper: eta_u,
                });
            }
            let (eta_star, c_star) = maximize_scalar(&objective, eta_l, eta_u, 1e-6);
            let c_limit = objective(eta_l);
            if c_limit >= c_star - 1e-9 {
                Ok(EtaOptimum {
                    eta_star: eta_l,
                    c_star: c_limit,
                    open_boundary: true,
                })
            } else {
                Ok(EtaOptimum {
                    eta_star,
                    c_star,
                    open_boundary: false,
                })
            }
        }
        EtaMode::Relaxed => {
            let (eta_star, c_star) = maximize_scalar(&objective, 1e-6, eta_u, 1e-6);
            Ok(EtaOptimum {
                eta_star,
                c_star,
                open_boundary: false,
            })
        }
    }
}

/// Sweeps coplanar geometries `(theta_12, theta_13)` on a half-step-offset
/// grid over `(0, pi)^2` (third axis in-plane on the far side, so
/// `cos theta_23 = cos(theta_12 + theta_13)`), optimizing sharpness per cell
/// and returning the best configuration. Ties in `C` break toward the
/// lexicographically smallest `(theta_12, theta_13)`.
pub fn optimize_geometry(
    resolution: usize,
    mode: EtaMode,
) -> Result<OptimalConfig, OptimizerError> {
    if resolution < 8 {
        return Err(OptimizerError::ResolutionTooSmall { resolution });
    }
    let step = std::f64::consts::PI / resolution as f64;

    struct Candidate {
        theta_12: f64,
        theta_13: f64,
        opt: EtaOptimum,
    }

    let best = (0..resolution * resolution)
        .into_par_iter()
        .filter_map(|cell| {
            let theta_12 = ((cell / resolution) as f64 + 0.5) * step;
            let theta_13 = ((cell % resolution) as f64 + 0.5) * step;
            let cosines = [theta_12.cos(), theta_13.cos(), (theta_12 + theta_13).cos()];
            optimize_eta(&cosines, mode).ok().map(|opt| Candidate {
                theta_12,
                theta_13,
                opt,
            })
        })
        .reduce_with(|a, b| {
            if b.opt.c_star > a.opt.c_star
                || (b.opt.c_star == a.opt.c_star
                    && (b.theta_12, b.theta_13) < (a.theta_12, a.theta_13))
            {
                b
            } else {
                a
            }
        })
        .ok_or(OptimizerError::NoFeasibleGeometry)?;

    config_for_geometry(best.theta_12, best.theta_13, best.opt)
}

fn config_for_geometry(
    theta_12: f64,
    theta_13: f64,
    opt: EtaOptimum,
) -> Result<OptimalConfig, OptimizerError> {
    let axes = zx_plane_axes(theta_12, theta_13);
    let cosines = PAIRS.map(|(i, j)| axes[i].dot(axes[j]));
    let params = [
        optimal_joint_params(cosines[0], opt.eta_star, UnitAxis::Y)?,
        optimal_joint_params(cosines[1], opt.eta_star, UnitAxis::Y)?,
        optimal_joint_params(cosines[2], opt.eta_star, UnitAxis::Y)?,
    ];
    let a_total = params.iter().fold(Vec3::ZERO, |acc, p| acc + p.a);
    let optimal_state =
        lsw::optimal_state(a_total).unwrap_or_else(|_| QubitState::maximally_mixed());
    Ok(OptimalConfig {
        eta: opt.eta_star,
        axes,
        params,
        c_max: opt.c_star,
        s_max: opt.c_star / 6.0,
        optimal_state,
        open_boundary: opt.open_boundary,
    })
}

/// Axes in the ZX plane with the third direction on the opposite side of the
/// first: `n2.n3 = cos(theta_12 + theta_13)`.
pub fn zx_plane_axes(theta_12: f64, theta_13: f64) -> [UnitAxis; 3] {
    [
        UnitAxis::Z,
        UnitAxis::from_polar(theta_12, 0.0),
        UnitAxis::from_polar(theta_13, std::f64::consts::PI),
    ]
}

/// Embeds a coplanar cosine triple as axes in the ZX plane and returns them
/// with the plane normal. The third cosine must match `cos(t12 ± t13)`.
fn realize_coplanar(cosines: &[f64; 3]) -> Result<([UnitAxis; 3], UnitAxis), OptimizerError> {
    for &c in cosines {
        check_cos(c)?;
    }
    let [c12, c13, c23] = *cosines;
    let theta_12 = c12.acos();
    let theta_13 = c13.acos();
    const COPLANAR_TOL: f64 = 1e-9;
    let x_sign = if ((theta_12 + theta_13).cos() - c23).abs() <= COPLANAR_TOL {
        -1.0
    } else if ((theta_12 - theta_13).cos() - c23).abs() <= COPLANAR_TOL {
        1.0
    } else {
        return Err(OptimizerError::NotCoplanar { cosines: *cosines });
    };
    let axes = [
        UnitAxis::Z,
        UnitAxis::from_polar(theta_12, 0.0),
        UnitAxis::new(x_sign * theta_13.sin(), 0.0, theta_13.cos()).expect("unit by construction"),
    ];
    Ok((axes, UnitAxis::Y))
}

/// Coarse scan plus golden-section refinement of `f` on `[lo, hi]`.
fn maximize_scalar(f: &dyn Fn(f64) -> f64, lo: f64, hi: f64, xtol: f64) -> (f64, f64) {
    const COARSE: usize = 128;
    let width = hi - lo;
    let mut best_k = 0;
    let mut best_v = f64::NEG_INFINITY;
    for k in 0..=COARSE {
        let x = lo + width * k as f64 / COARSE as f64;
        let v = f(x);
        if v > best_v {
            best_v = v;
            best_k = k;
        }
    }
    let a = lo + width * best_k.saturating_sub(1) as f64 / COARSE as f64;
    let b = lo + width * (best_k + 1).min(COARSE) as f64 / COARSE as f64;
    golden_section_maximize(f, a, b, xtol)
}

fn golden_section_maximize(
    f: &dyn Fn(f64) -> f64,
    mut a: f64,
    mut b: f64,
    xtol: f64,
) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = b - INV_PHI * (b - a);
    let mut x2 = a + INV_PHI * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while b - a > xtol {
        if f1 >= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - INV_PHI * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + INV_PHI * (b - a);
            f2 = f(x2);
        }
    }
    if f1 >= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

fn check_eta(eta: f64) -> Result<(), OptimizerError> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(OptimizerError::EtaOutOfRange { eta });
    }
    Ok(())
}

fn check_cos(cos_theta: f64) -> Result<(), OptimizerError> {
    if !(-1.0..=1.0).contains(&cos_theta) {
        return Err(OptimizerError::CosOutOfRange { cos_theta });
    }
    Ok(())
}
