//! Joint-measurability criteria for unsharp qubit observables sharing a
//! common sharpness `eta`.
//!
//! For a pair with `cos t = n_i.n_j` the compatibility condition is
//! `1 + eta^4 cos^2 t - 2 eta^2 >= 0`, equivalently `eta <= 1 / sqrt(1 + |sin t|)`.
//! For N observables, with the 2^N sign vectors `m = sum_k X_k n_k`,
//! `eta <= max|m| / N` is necessary and `eta <= 2^N / sum|m|` is sufficient
//! for an N-wise joint measurement. A triple admits the Specker scenario
//! (pairwise but not triplewise compatible) inside the half-open window
//! `eta_l < eta <= eta_u`.

use thiserror::Error;

use crate::qubit_algebra::{AlgebraError, NoisyObservable, UnitAxis, Vec3, TOL_ALG};

/// Sign-pattern enumeration is exhaustive over 2^N patterns; keep N small.
pub const MAX_OBSERVABLES: usize = 10;

/// The three index pairs of a triple, in the fixed order (1,2), (1,3), (2,3).
pub const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum CompatibilityError {
    #[error("sharpness must lie in [0, 1], got {eta}")]
    EtaOutOfRange { eta: f64 },
    #[error("cos(theta) must lie in [-1, 1], got {cos_theta}")]
    CosOutOfRange { cos_theta: f64 },
    #[error("observable count must lie in 1..={MAX_OBSERVABLES}, got {n}")]
    ObservableCount { n: usize },
}

/// Three measurement axes with a shared sharpness.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementTriple {
    axes: [UnitAxis; 3],
    eta: f64,
}

impl MeasurementTriple {
    pub fn new(axes: [UnitAxis; 3], eta: f64) -> Result<Self, AlgebraError> {
        if !(0.0..=1.0).contains(&eta) {
            return Err(AlgebraError::SharpnessOutOfRange { eta });
        }
        Ok(MeasurementTriple { axes, eta })
    }

    /// Trine axes in the ZX plane: mutual angles 120 degrees.
    pub fn trine_zx(eta: f64) -> Result<Self, AlgebraError> {
        let s = 3f64.sqrt() / 2.0;
        let axes = [
            UnitAxis::Z,
            UnitAxis::new(s, 0.0, -0.5).expect("unit by construction"),
            UnitAxis::new(-s, 0.0, -0.5).expect("unit by construction"),
        ];
        MeasurementTriple::new(axes, eta)
    }

    /// The coordinate axes x, y, z.
    pub fn orthogonal(eta: f64) -> Result<Self, AlgebraError> {
        MeasurementTriple::new([UnitAxis::X, UnitAxis::Y, UnitAxis::Z], eta)
    }

    pub fn axes(&self) -> &[UnitAxis; 3] {
        &self.axes
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn observables(&self) -> [NoisyObservable; 3] {
        self.axes.map(|axis| {
            NoisyObservable::new(axis, self.eta).expect("eta validated on construction")
        })
    }

    /// Pairwise cosines `n_i.n_j` in [`PAIRS`] order.
    pub fn cos_angles(&self) -> [f64; 3] {
        PAIRS.map(|(i, j)| self.axes[i].dot(self.axes[j]))
    }

    pub fn window(&self) -> CompatibilityWindow {
        specker_window(&self.axes)
    }
}

/// The half-open sharpness window `(eta_lower, eta_upper]` in which the triple
/// is pairwise but not triplewise jointly measurable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompatibilityWindow {
    pub eta_lower: f64,
    pub eta_upper: f64,
}

impl CompatibilityWindow {
    pub fn nonempty(&self) -> bool {
        self.eta_lower < self.eta_upper
    }

    /// Half-open membership: `eta_lower < eta <= eta_upper`, with [`TOL_ALG`]
    /// slack on each comparison.
    pub fn contains(&self, eta: f64) -> bool {
        eta > self.eta_lower + TOL_ALG && eta <= self.eta_upper + TOL_ALG
    }
}

/// Pairwise compatibility: `1 + eta^4 cos^2 t - 2 eta^2 >= 0`.
pub fn pairwise_compatible(eta: f64, cos_theta: f64) -> Result<bool, CompatibilityError> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(CompatibilityError::EtaOutOfRange { eta });
    }
    if !(-1.0..=1.0).contains(&cos_theta) {
        return Err(CompatibilityError::CosOutOfRange { cos_theta });
    }
    Ok(pairwise_margin(eta, cos_theta) >= -TOL_ALG)
}

/// The pairwise compatibility margin `1 + eta^4 cos^2 t - 2 eta^2`.
pub fn pairwise_margin(eta: f64, cos_theta: f64) -> f64 {
    let e2 = eta * eta;
    1.0 + e2 * e2 * cos_theta * cos_theta - 2.0 * e2
}

/// Largest sharpness at which all three pairs stay jointly measurable:
/// `min over pairs of 1 / sqrt(1 + |sin t_ij|)`.
pub fn eta_upper(axes: &[UnitAxis; 3]) -> f64 {
    eta_upper_from_cosines(&PAIRS.map(|(i, j)| axes[i].dot(axes[j])))
}

pub fn eta_upper_from_cosines(cosines: &[f64; 3]) -> f64 {
    cosines
        .iter()
        .map(|c| {
            let abs_sin = (1.0 - c * c).max(0.0).sqrt();
            1.0 / (1.0 + abs_sin).sqrt()
        })
        .fold(f64::INFINITY, f64::min)
}

/// Sharpness above which the triple stops being triplewise jointly
/// measurable: `max over sign patterns of |X1 n1 + X2 n2 + X3 n3| / 3`,
/// equivalently `max sqrt(3 + 2 sum X_k X_l cos t_kl) / 3`.
pub fn eta_lower(axes: &[UnitAxis; 3]) -> f64 {
    eta_lower_from_cosines(&PAIRS.map(|(i, j)| axes[i].dot(axes[j])))
}

pub fn eta_lower_from_cosines(cosines: &[f64; 3]) -> f64 {
    let [c12, c13, c23] = *cosines;
    let mut best = 0.0f64;
    for signs in 0..8u32 {
        let x = [1.0, -1.0];
        let (x1, x2, x3) = (
            x[(signs & 1) as usize],
            x[((signs >> 1) & 1) as usize],
            x[((signs >> 2) & 1) as usize],
        );
        let m_sq = 3.0 + 2.0 * (x1 * x2 * c12 + x1 * x3 * c13 + x2 * x3 * c23);
        best = best.max(m_sq.max(0.0).sqrt() / 3.0);
    }
    best
}

/// Necessary condition for an N-wise joint measurement:
/// `eta <= max over sign vectors of |sum X_k n_k| / N`.
pub fn n_wise_necessary(axes: &[UnitAxis], eta: f64) -> Result<bool, CompatibilityError> {
    let bound = sign_vector_norms(axes)?.into_iter().fold(0.0f64, f64::max) / axes.len() as f64;
    Ok(eta <= bound + TOL_ALG)
}

/// Sufficient condition for an N-wise joint measurement:
/// `eta <= 2^N / sum over sign vectors of |sum X_k n_k|`.
pub fn n_wise_sufficient(axes: &[UnitAxis], eta: f64) -> Result<bool, CompatibilityError> {
    let norms = sign_vector_norms(axes)?;
    let total: f64 = norms.iter().sum();
    let bound = (1u64 << axes.len()) as f64 / total;
    Ok(eta <= bound + TOL_ALG)
}

fn sign_vector_norms(axes: &[UnitAxis]) -> Result<Vec<f64>, CompatibilityError> {
    let n = axes.len();
    if n == 0 || n > MAX_OBSERVABLES {
        return Err(CompatibilityError::ObservableCount { n });
    }
    Ok((0..1u64 << n)
        .map(|pattern| {
            let mut m = Vec3::ZERO;
            for (k, axis) in axes.iter().enumerate() {
                let sign = if pattern >> k & 1 == 0 { 1.0 } else { -1.0 };
                m = m + sign * axis.vec();
            }
            m.norm()
        })
        .collect())
}

/// The Specker window `(eta_lower, eta_upper]` for a triple of axes. A
/// degenerate triple (axes repeated) just yields an empty window.
pub fn specker_window(axes: &[UnitAxis; 3]) -> CompatibilityWindow {
    CompatibilityWindow {
        eta_lower: eta_lower(axes),
        eta_upper: eta_upper(axes),
    }
}
