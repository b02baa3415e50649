//! Scenario file schema and its resolution into library types.
//!
//! Scenario files are JSON with four keys: `axes` (preset name or three unit
//! 3-vectors), `eta` (number or an optimization mode), and optional
//! `joint_params` (explicit per-pair `alpha`/`a`, default `"optimal"`) and
//! `state` (Bloch 3-vector, default `"optimal"`). Unknown keys are rejected.

use serde::{Deserialize, Serialize};

use specker_core::joint_measurability::PAIRS;
use specker_core::optimizer::{self, EtaMode};
use specker_core::qubit_algebra::{QubitState, UnitAxis, Vec3};
use specker_core::{JointParams, MeasurementTriple};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub axes: AxesSpec,
    pub eta: EtaSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub joint_params: Option<JointParamsSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<StateSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum AxesSpec {
    Preset(AxesPreset),
    Explicit([[f64; 3]; 3]),
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum AxesPreset {
    Trine,
    Orthogonal,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum EtaSpec {
    Value(f64),
    Mode(EtaModeSpec),
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum EtaModeSpec {
    OptimalConstrained,
    OptimalRelaxed,
}

/// The literal string `"optimal"`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq, Eq)]
pub enum OptimalKeyword {
    #[serde(rename = "optimal")]
    Optimal,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum JointParamsSpec {
    Optimal(OptimalKeyword),
    Explicit([JointParamSpec; 3]),
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct JointParamSpec {
    pub alpha: f64,
    pub a: [f64; 3],
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum StateSpec {
    Optimal(OptimalKeyword),
    Bloch([f64; 3]),
}

/// How the sharpness in a resolved scenario was chosen.
#[derive(Debug, Clone, PartialEq)]
pub enum EtaSource {
    Explicit,
    Optimized {
        mode: &'static str,
        open_boundary: bool,
    },
}

#[derive(Debug, Clone)]
pub struct ResolvedScenario {
    pub triple: MeasurementTriple,
    pub params: [JointParams; 3],
    /// `None` means "evaluate on the violation-optimal state".
    pub state: Option<QubitState>,
    pub eta_source: EtaSource,
}

impl ScenarioFile {
    pub fn resolve(&self) -> Result<ResolvedScenario, String> {
        let axes = self.resolve_axes()?;
        let cosines = PAIRS.map(|(i, j)| axes[i].dot(axes[j]));

        let (eta, eta_source) = match &self.eta {
            EtaSpec::Value(v) => (*v, EtaSource::Explicit),
            EtaSpec::Mode(mode) => {
                let (core_mode, name) = match mode {
                    EtaModeSpec::OptimalConstrained => {
                        (EtaMode::Constrained, "optimal-constrained")
                    }
                    EtaModeSpec::OptimalRelaxed => (EtaMode::Relaxed, "optimal-relaxed"),
                };
                let opt = optimizer::optimize_eta(&cosines, core_mode)
                    .map_err(|e| format!("eta optimization failed: {e}"))?;
                (
                    opt.eta_star,
                    EtaSource::Optimized {
                        mode: name,
                        open_boundary: opt.open_boundary,
                    },
                )
            }
        };

        let triple = MeasurementTriple::new(axes, eta).map_err(|e| e.to_string())?;

        let params = match &self.joint_params {
            None | Some(JointParamsSpec::Optimal(_)) => optimal_params_for_axes(&axes, eta)?,
            Some(JointParamsSpec::Explicit(list)) => [
                JointParams::new(list[0].alpha, vec3(list[0].a)),
                JointParams::new(list[1].alpha, vec3(list[1].a)),
                JointParams::new(list[2].alpha, vec3(list[2].a)),
            ],
        };

        let state = match &self.state {
            None | Some(StateSpec::Optimal(_)) => None,
            Some(StateSpec::Bloch(r)) => Some(
                QubitState::new(vec3(*r))
                    .map_err(|e| format!("invalid state Bloch vector: {e}"))?,
            ),
        };

        Ok(ResolvedScenario {
            triple,
            params,
            state,
            eta_source,
        })
    }

    fn resolve_axes(&self) -> Result<[UnitAxis; 3], String> {
        match &self.axes {
            AxesSpec::Preset(AxesPreset::Trine) => Ok(*MeasurementTriple::trine_zx(0.5)
                .expect("valid preset")
                .axes()),
            AxesSpec::Preset(AxesPreset::Orthogonal) => Ok([UnitAxis::X, UnitAxis::Y, UnitAxis::Z]),
            AxesSpec::Explicit(raw) => {
                let mut axes = Vec::with_capacity(3);
                for (k, v) in raw.iter().enumerate() {
                    axes.push(
                        UnitAxis::new(v[0], v[1], v[2]).map_err(|e| format!("axes[{k}]: {e}"))?,
                    );
                }
                Ok([axes[0], axes[1], axes[2]])
            }
        }
    }
}

fn vec3(v: [f64; 3]) -> Vec3 {
    Vec3::new(v[0], v[1], v[2])
}

/// Violation-maximizing joint parameters for a full axis triple.
///
/// For coplanar axes all three `a_ij` share the plane normal, which
/// reproduces the closed-form optimum. Otherwise each pair uses its own
/// perpendicular direction and the orientation signs are chosen to maximize
/// `|sum a_ij|` (the best configuration within the per-pair perpendicular
/// family).
pub fn optimal_params_for_axes(axes: &[UnitAxis; 3], eta: f64) -> Result<[JointParams; 3], String> {
    const PLANE_TOL: f64 = 1e-9;
    if let Some(normal) = common_plane_normal(axes, PLANE_TOL) {
        let mut out = Vec::with_capacity(3);
        for (i, j) in PAIRS {
            out.push(
                optimizer::optimal_joint_params(axes[i].dot(axes[j]), eta, normal)
                    .map_err(|e| e.to_string())?,
            );
        }
        return Ok([out[0], out[1], out[2]]);
    }

    // Non-coplanar: per-pair perpendicular directions, signs maximizing |sum a|.
    let mut vectors = Vec::with_capacity(3);
    for (i, j) in PAIRS {
        let cross = axes[i].vec().cross(axes[j].vec());
        let norm = cross.norm();
        if norm < PLANE_TOL {
            return Err(format!(
                "axes {} and {} are parallel; give explicit joint_params",
                i + 1,
                j + 1
            ));
        }
        let direction = cross * (1.0 / norm);
        let margin = specker_core::joint_measurability::pairwise_margin(eta, axes[i].dot(axes[j]));
        if margin < -specker_core::TOL_ALG {
            return Err(format!(
                "pair ({},{}) is not jointly measurable at eta = {eta}",
                i + 1,
                j + 1
            ));
        }
        vectors.push(direction * margin.max(0.0).sqrt());
    }
    let mut best_signs = [1.0; 3];
    let mut best_norm = f64::NEG_INFINITY;
    for pattern in 0..8u32 {
        let signs: [f64; 3] =
            std::array::from_fn(|k| if pattern >> k & 1 == 0 { 1.0 } else { -1.0 });
        let total = (0..3).fold(Vec3::ZERO, |acc, k| acc + vectors[k] * signs[k]);
        if total.norm() > best_norm {
            best_norm = total.norm();
            best_signs = signs;
        }
    }
    let mut out = Vec::with_capacity(3);
    for (k, (i, j)) in PAIRS.into_iter().enumerate() {
        out.push(JointParams::new(
            1.0 + eta * eta * axes[i].dot(axes[j]),
            vectors[k] * best_signs[k],
        ));
    }
    Ok([out[0], out[1], out[2]])
}

/// A unit normal shared by all three axes, when they are coplanar. For any
/// non-parallel pair the only candidate is that pair's cross direction, so a
/// single check decides.
fn common_plane_normal(axes: &[UnitAxis; 3], tol: f64) -> Option<UnitAxis> {
    for (i, j) in PAIRS {
        let cross = axes[i].vec().cross(axes[j].vec());
        let norm = cross.norm();
        if norm < tol {
            continue;
        }
        let n = cross * (1.0 / norm);
        if axes.iter().all(|axis| axis.vec().dot(n).abs() <= tol) {
            return UnitAxis::new(n.x, n.y, n.z).ok();
        }
        return None;
    }
    // All axes parallel: any perpendicular direction works.
    let base = axes[0].vec();
    let helper = if base.x.abs() < 0.9 {
        Vec3::new(1.0, 0.0, 0.0)
    } else {
        Vec3::new(0.0, 1.0, 0.0)
    };
    let cross = base.cross(helper);
    let norm = cross.norm();
    UnitAxis::new(cross.x / norm, cross.y / norm, cross.z / norm).ok()
}
