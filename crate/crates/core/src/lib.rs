//! Analysis toolkit for a triple of unsharp qubit measurements in Specker's
//! compatibility scenario: pairwise joint measurability, joint-POVM
//! construction, the average-anticorrelation quantity R3 and its
//! noncontextual bounds, and optimization of the quantum violation.
//!
//! Everything works in the Bloch representation. An effect is stored as a
//! coefficient pair `E = (c I + v.sigma) / 2`; dense 2x2 matrices exist only
//! as a cross-checking oracle (`QubitEffect::as_matrix`).

pub mod joint_measurability;
pub mod joint_povm;
pub mod lsw;
pub mod ont_model;
pub mod optimizer;
pub mod qubit_algebra;

pub use joint_measurability::{CompatibilityError, CompatibilityWindow, MeasurementTriple};
pub use joint_povm::{JointParams, JointPovm, JointPovmError};
pub use lsw::{LswError, ScenarioReport, SiScanResult, ViolationTerms};
pub use ont_model::{HiddenAssignment, OntModelError, PairwiseDistribution};
pub use optimizer::{EtaMode, EtaOptimum, GridSpec, OptimalConfig, OptimizerError};
pub use qubit_algebra::{
    AlgebraError, NoisyObservable, Povm, QubitEffect, QubitState, UnitAxis, Vec3, TOL_ALG,
};
