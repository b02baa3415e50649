//! Bloch-form algebra for qubit states, effects, and POVMs.
//!
//! An effect is `E = (c I + v.sigma) / 2` with eigenvalues `(c ± |v|) / 2`,
//! so validity (`0 <= E <= I`) is the pair of inequalities `|v| <= c` and
//! `c + |v| <= 2`. A state is a Bloch vector `r` with `|r| <= 1`, and the
//! Born rule is `Tr(rho E) = (c + v.r) / 2`. All operations here are
//! closed-form on unit-scale quantities; `as_matrix` exports a dense 2x2
//! matrix used only as an independent cross-check.

use num_complex::Complex64;
use thiserror::Error;

/// Absolute tolerance for algebraic identities on unit-scale quantities.
pub const TOL_ALG: f64 = 1e-12;

/// Maximum accepted deviation of an input axis norm from 1. Inputs that are
/// further off are rejected rather than silently renormalized.
pub const AXIS_NORM_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum AlgebraError {
    #[error("axis norm {norm} deviates from 1 by more than {AXIS_NORM_TOL:e}")]
    AxisNotUnit { norm: f64 },
    #[error("sharpness must lie in [0, 1], got {eta}")]
    SharpnessOutOfRange { eta: f64 },
    #[error("Bloch vector norm {norm} exceeds 1")]
    BlochNormTooLarge { norm: f64 },
    #[error("mixing weight must lie in [0, 1], got {q}")]
    WeightOutOfRange { q: f64 },
}

/// A real 3-vector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 {
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn cross(self, other: Vec3) -> Vec3 {
        Vec3 {
            x: self.y * other.z - self.z * other.y,
            y: self.z * other.x - self.x * other.z,
            z: self.x * other.y - self.y * other.x,
        }
    }

    pub fn norm_sq(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm_sq().sqrt()
    }
}

impl std::ops::Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl std::ops::Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl std::ops::Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl std::ops::Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl std::ops::Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

/// A unit vector on the Bloch sphere. Construction checks the norm; inputs
/// off by more than [`AXIS_NORM_TOL`] are rejected.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitAxis(Vec3);

impl UnitAxis {
    pub const X: UnitAxis = UnitAxis(Vec3::new(1.0, 0.0, 0.0));
    pub const Y: UnitAxis = UnitAxis(Vec3::new(0.0, 1.0, 0.0));
    pub const Z: UnitAxis = UnitAxis(Vec3::new(0.0, 0.0, 1.0));

    pub fn new(x: f64, y: f64, z: f64) -> Result<Self, AlgebraError> {
        let v = Vec3::new(x, y, z);
        let norm = v.norm();
        if (norm - 1.0).abs() > AXIS_NORM_TOL {
            return Err(AlgebraError::AxisNotUnit { norm });
        }
        Ok(UnitAxis(v * (1.0 / norm)))
    }

    /// `(sin t cos p, sin t sin p, cos t)`; unit by construction.
    pub fn from_polar(theta: f64, phi: f64) -> Self {
        UnitAxis(Vec3::new(
            theta.sin() * phi.cos(),
            theta.sin() * phi.sin(),
            theta.cos(),
        ))
    }

    pub fn vec(self) -> Vec3 {
        self.0
    }

    pub fn dot(self, other: UnitAxis) -> f64 {
        self.0.dot(other.0)
    }
}

/// A qubit effect `E = (c I + v.sigma) / 2` with eigenvalues `(c ± |v|) / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitEffect {
    pub c: f64,
    pub v: Vec3,
}

impl QubitEffect {
    pub const fn new(c: f64, v: Vec3) -> Self {
        QubitEffect { c, v }
    }

    /// The identity operator, `c = 2`, `v = 0`.
    pub const fn identity() -> Self {
        QubitEffect {
            c: 2.0,
            v: Vec3::ZERO,
        }
    }

    /// Validity `0 <= E <= I`, i.e. `|v| <= c` and `c + |v| <= 2`, both with
    /// [`TOL_ALG`] slack so boundary effects (projectors, rank-one joint
    /// effects) are accepted.
    pub fn is_valid(&self) -> bool {
        let n = self.v.norm();
        n <= self.c + TOL_ALG && self.c + n <= 2.0 + TOL_ALG
    }

    /// Eigenvalues `((c - |v|) / 2, (c + |v|) / 2)` from the Bloch form.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let n = self.v.norm();
        ((self.c - n) / 2.0, (self.c + n) / 2.0)
    }

    /// Dense matrix `(c I + v_x sx + v_y sy + v_z sz) / 2` in the standard
    /// Pauli basis. Cross-check channel only; the library itself never
    /// computes through this representation.
    pub fn as_matrix(&self) -> [[Complex64; 2]; 2] {
        let h = 0.5;
        [
            [
                Complex64::new(h * (self.c + self.v.z), 0.0),
                Complex64::new(h * self.v.x, -h * self.v.y),
            ],
            [
                Complex64::new(h * self.v.x, h * self.v.y),
                Complex64::new(h * (self.c - self.v.z), 0.0),
            ],
        ]
    }

    pub fn approx_eq(&self, other: &QubitEffect, tol: f64) -> bool {
        (self.c - other.c).abs() <= tol && (self.v - other.v).norm() <= tol
    }
}

impl std::ops::Add for QubitEffect {
    type Output = QubitEffect;
    fn add(self, o: QubitEffect) -> QubitEffect {
        QubitEffect::new(self.c + o.c, self.v + o.v)
    }
}

/// Eigenvalues of a Hermitian 2x2 matrix computed from its entries. This is
/// the matrix-side route of the Bloch-vs-matrix cross-check and deliberately
/// does not go through the `(c, v)` form.
pub fn hermitian_eigenvalues(m: &[[Complex64; 2]; 2]) -> (f64, f64) {
    let a = m[0][0].re;
    let d = m[1][1].re;
    let off = m[0][1].norm_sqr();
    let mid = 0.5 * (a + d);
    let disc = (0.25 * (a - d) * (a - d) + off).sqrt();
    (mid - disc, mid + disc)
}

/// A qubit state as a Bloch vector, `rho = (I + r.sigma) / 2`, `|r| <= 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    r: Vec3,
}

impl QubitState {
    pub fn new(r: Vec3) -> Result<Self, AlgebraError> {
        let norm = r.norm();
        if norm > 1.0 + TOL_ALG {
            return Err(AlgebraError::BlochNormTooLarge { norm });
        }
        Ok(QubitState { r })
    }

    pub fn maximally_mixed() -> Self {
        QubitState { r: Vec3::ZERO }
    }

    pub fn pure(axis: UnitAxis) -> Self {
        QubitState { r: axis.vec() }
    }

    /// `rho = q |psi><psi| + (1 - q)(I - |psi><psi|)` with `|psi>` the pure
    /// state along `(theta, phi)`; Bloch vector `(2q - 1) n(theta, phi)`.
    pub fn from_mixture(q: f64, theta: f64, phi: f64) -> Result<Self, AlgebraError> {
        if !(0.0..=1.0).contains(&q) {
            return Err(AlgebraError::WeightOutOfRange { q });
        }
        Ok(QubitState {
            r: (2.0 * q - 1.0) * UnitAxis::from_polar(theta, phi).vec(),
        })
    }

    pub fn bloch(&self) -> Vec3 {
        self.r
    }

    pub fn is_pure(&self) -> bool {
        (self.r.norm() - 1.0).abs() <= TOL_ALG
    }
}

/// An unsharp binary observable `{E+, E-}` with `E± = (I ± eta sigma.n) / 2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoisyObservable {
    axis: UnitAxis,
    eta: f64,
}

impl NoisyObservable {
    pub fn new(axis: UnitAxis, eta: f64) -> Result<Self, AlgebraError> {
        if !(0.0..=1.0).contains(&eta) {
            return Err(AlgebraError::SharpnessOutOfRange { eta });
        }
        Ok(NoisyObservable { axis, eta })
    }

    pub fn axis(&self) -> UnitAxis {
        self.axis
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// The effect pair `(E+, E-)`; sums to the identity by construction.
    pub fn effects(&self) -> (QubitEffect, QubitEffect) {
        let v = self.eta * self.axis.vec();
        (QubitEffect::new(1.0, v), QubitEffect::new(1.0, -v))
    }
}

/// An ordered list of effects meant to sum to the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct Povm {
    pub effects: Vec<QubitEffect>,
}

impl Povm {
    pub fn new(effects: Vec<QubitEffect>) -> Self {
        Povm { effects }
    }

    /// All elements valid, `sum c = 2` and `sum v = 0` within [`TOL_ALG`].
    pub fn is_valid(&self) -> bool {
        let c_sum: f64 = self.effects.iter().map(|e| e.c).sum();
        let v_sum = self.effects.iter().fold(Vec3::ZERO, |acc, e| acc + e.v);
        (c_sum - 2.0).abs() <= TOL_ALG
            && v_sum.norm() <= TOL_ALG
            && self.effects.iter().all(QubitEffect::is_valid)
    }
}

/// Born rule `Tr(rho E) = (c + v.r) / 2`.
pub fn born_probability(state: &QubitState, effect: &QubitEffect) -> f64 {
    0.5 * (effect.c + effect.v.dot(state.bloch()))
}
