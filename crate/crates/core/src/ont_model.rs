//! The noncontextual response-function model behind the `1 - eta/3` bound.
//!
//! Outcomes are relabeled `{+1 -> 0, -1 -> 1}` at this module's boundary.
//! A hidden state assigns a definite bit to each of the three measurements;
//! the single-measurement response mixes that assignment with a fair coin,
//! `p(x | M_k; lambda) = eta [x = X_k(lambda)] + (1 - eta)/2`, and the
//! pairwise response routes the entire coin weight onto the anticorrelated
//! outcome pair,
//! `p(x_i, x_j | M_ij; lambda) = eta [x_i = X_i][x_j = X_j] + (1 - eta)/2 [x_i != x_j]`.
//! Maximizing the average anticorrelation over assignments yields the model
//! bound `1 - eta/3` exactly (the outcome-deterministic bound 2/3 at eta = 1).
//!
//! `joint_feasibility` decides whether three pairwise distributions extend to
//! a joint distribution over all three outcomes, by exact small-scale linear
//! feasibility (phase-1 simplex with Bland's rule on 8 unknowns).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::joint_povm::JointPovm;
use crate::qubit_algebra::{born_probability, QubitState, TOL_ALG};

/// Slack accepted by the joint-distribution feasibility decision.
pub const TOL_FEAS: f64 = 1e-9;

/// Default seed for the Monte Carlo sampling path.
pub const DEFAULT_SEED: u64 = 0xC0FFEE;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum OntModelError {
    #[error("probabilities must be nonnegative and sum to 1 (sum = {sum}, min entry = {min})")]
    InvalidDistribution { sum: f64, min: f64 },
    #[error("shared marginal of X{variable} differs between pairs by {delta:.3e}")]
    InconsistentMarginals { variable: usize, delta: f64 },
}

/// A deterministic outcome assignment `(X_1, X_2, X_3)`, each bit 0 or 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HiddenAssignment {
    bits: [u8; 3],
}

impl HiddenAssignment {
    pub fn new(x1: u8, x2: u8, x3: u8) -> Self {
        assert!(x1 <= 1 && x2 <= 1 && x3 <= 1, "outcomes are bits");
        HiddenAssignment { bits: [x1, x2, x3] }
    }

    /// All 8 assignments, in lexicographic order.
    pub fn all() -> [HiddenAssignment; 8] {
        let mut out = [HiddenAssignment { bits: [0; 3] }; 8];
        for (idx, slot) in out.iter_mut().enumerate() {
            slot.bits = [(idx >> 2 & 1) as u8, (idx >> 1 & 1) as u8, (idx & 1) as u8];
        }
        out
    }

    pub fn outcome(&self, k: usize) -> u8 {
        self.bits[k]
    }
}

/// `p(x | M_k; lambda) = eta [x = X_k(lambda)] + (1 - eta)/2`.
pub fn response_single(eta: f64, x: u8, lambda: HiddenAssignment, k: usize) -> f64 {
    debug_assert!((0.0..=1.0).contains(&eta));
    let point = if x == lambda.outcome(k) { eta } else { 0.0 };
    point + (1.0 - eta) / 2.0
}

/// `p(x_i, x_j | M_ij; lambda)`: the sharp part follows the assignment, the
/// coin part is split over the two anticorrelated outcomes.
pub fn response_pair(
    eta: f64,
    xi: u8,
    xj: u8,
    lambda: HiddenAssignment,
    pair: (usize, usize),
) -> f64 {
    debug_assert!((0.0..=1.0).contains(&eta));
    debug_assert!(pair.0 != pair.1);
    let sharp = if xi == lambda.outcome(pair.0) && xj == lambda.outcome(pair.1) {
        eta
    } else {
        0.0
    };
    let coin = if xi != xj { (1.0 - eta) / 2.0 } else { 0.0 };
    sharp + coin
}

/// A distribution over the four outcome pairs `(x_i, x_j)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairwiseDistribution {
    p: [f64; 4],
}

impl PairwiseDistribution {
    /// Entries ordered `(0,0), (0,1), (1,0), (1,1)`.
    pub fn new(p: [f64; 4]) -> Result<Self, OntModelError> {
        let sum: f64 = p.iter().sum();
        let min = p.iter().copied().fold(f64::INFINITY, f64::min);
        if min < -TOL_ALG || (sum - 1.0).abs() > TOL_ALG {
            return Err(OntModelError::InvalidDistribution { sum, min });
        }
        Ok(PairwiseDistribution { p })
    }

    /// The model's pairwise response table for a fixed assignment.
    pub fn from_model(eta: f64, lambda: HiddenAssignment, pair: (usize, usize)) -> Self {
        let mut p = [0.0; 4];
        for xi in 0..2u8 {
            for xj in 0..2u8 {
                p[(2 * xi + xj) as usize] = response_pair(eta, xi, xj, lambda, pair);
            }
        }
        PairwiseDistribution { p }
    }

    /// The quantum outcome distribution of a joint measurement on a state,
    /// with outcomes relabeled `+ -> 0`, `- -> 1`.
    pub fn from_joint_measurement(state: &QubitState, joint: &JointPovm) -> Self {
        PairwiseDistribution {
            p: [
                born_probability(state, &joint.g_pp),
                born_probability(state, &joint.g_pm),
                born_probability(state, &joint.g_mp),
                born_probability(state, &joint.g_mm),
            ],
        }
    }

    pub fn prob(&self, xi: u8, xj: u8) -> f64 {
        self.p[(2 * xi + xj) as usize]
    }

    pub fn marginal_first(&self) -> [f64; 2] {
        [self.p[0] + self.p[1], self.p[2] + self.p[3]]
    }

    pub fn marginal_second(&self) -> [f64; 2] {
        [self.p[0] + self.p[2], self.p[1] + self.p[3]]
    }

    /// `P(x_i != x_j)`.
    pub fn anticorrelation(&self) -> f64 {
        self.p[1] + self.p[2]
    }
}

/// Maximum of `R3 = (1/3) sum over pairs of P(X_i != X_j)` over the 8
/// assignments, together with a maximizing assignment. Equals `1 - eta/3`:
/// at most two of the three pairs can anticorrelate deterministically, and
/// the coin contributes full anticorrelation at weight `1 - eta`.
pub fn model_r3_max(eta: f64) -> (f64, HiddenAssignment) {
    let mut best = (f64::NEG_INFINITY, HiddenAssignment::new(0, 0, 0));
    for lambda in HiddenAssignment::all() {
        let mut sum = 0.0;
        for pair in [(0, 1), (0, 2), (1, 2)] {
            sum += PairwiseDistribution::from_model(eta, lambda, pair).anticorrelation();
        }
        let r3 = sum / 3.0;
        if r3 > best.0 {
            best = (r3, lambda);
        }
    }
    best
}

/// Empirical pairwise table from `n` Monte Carlo draws of the model's
/// response. The generator is seeded per `(seed, stream)`, so parallel
/// streams are reproducible independently.
pub fn sample_pair(
    eta: f64,
    lambda: HiddenAssignment,
    pair: (usize, usize),
    n: u64,
    seed: u64,
    stream: u64,
) -> PairwiseDistribution {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    let mut counts = [0u64; 4];
    for _ in 0..n {
        let (xi, xj) = if rng.random::<f64>() < eta {
            (lambda.outcome(pair.0), lambda.outcome(pair.1))
        } else if rng.random::<bool>() {
            (0, 1)
        } else {
            (1, 0)
        };
        counts[(2 * xi + xj) as usize] += 1;
    }
    PairwiseDistribution {
        p: counts.map(|k| k as f64 / n as f64),
    }
}

/// Decides whether a joint distribution `p(X1, X2, X3) >= 0` exists whose
/// three pairwise marginals match the inputs (within [`TOL_FEAS`]).
///
/// Inputs must already agree on the shared single-variable marginals within
/// [`TOL_ALG`]; otherwise the question is ill-posed and an error is returned.
#[allow(clippy::needless_range_loop)] // p_idx doubles as the bit pattern
pub fn joint_feasibility(
    d12: &PairwiseDistribution,
    d13: &PairwiseDistribution,
    d23: &PairwiseDistribution,
) -> Result<bool, OntModelError> {
    check_consistency(1, &d12.marginal_first(), &d13.marginal_first())?;
    check_consistency(2, &d12.marginal_second(), &d23.marginal_first())?;
    check_consistency(3, &d13.marginal_second(), &d23.marginal_second())?;

    // 12 marginal constraints over the 8 joint probabilities p(x1, x2, x3),
    // indexed 4 x1 + 2 x2 + x3.
    let mut rows = [[0.0f64; 8]; 12];
    let mut rhs = [0.0f64; 12];
    let mut row = 0;
    for (pair, dist) in [((0usize, 1usize), d12), ((0, 2), d13), ((1, 2), d23)] {
        for xi in 0..2usize {
            for xj in 0..2usize {
                for p_idx in 0..8usize {
                    let bits = [p_idx >> 2 & 1, p_idx >> 1 & 1, p_idx & 1];
                    if bits[pair.0] == xi && bits[pair.1] == xj {
                        rows[row][p_idx] = 1.0;
                    }
                }
                rhs[row] = dist.prob(xi as u8, xj as u8).max(0.0);
                row += 1;
            }
        }
    }
    Ok(phase1_infeasibility(&rows, &rhs) <= TOL_FEAS)
}

fn check_consistency(variable: usize, a: &[f64; 2], b: &[f64; 2]) -> Result<(), OntModelError> {
    let delta = (a[0] - b[0]).abs().max((a[1] - b[1]).abs());
    if delta > TOL_ALG {
        return Err(OntModelError::InconsistentMarginals { variable, delta });
    }
    Ok(())
}

/// Phase-1 simplex on `A p = b, p >= 0` with `b >= 0`: minimizes the total
/// artificial mass and returns the optimum (zero iff the system is feasible).
/// Bland's rule keeps the tiny, highly degenerate tableau from cycling.
#[allow(clippy::needless_range_loop)] // row/column index arithmetic on a dense tableau
fn phase1_infeasibility(a: &[[f64; 8]; 12], b: &[f64; 12]) -> f64 {
    const ROWS: usize = 12;
    const VARS: usize = 8;
    const COLS: usize = VARS + ROWS + 1; // structural, artificial, rhs
    const PIVOT_TOL: f64 = 1e-11;

    let mut t = [[0.0f64; COLS]; ROWS];
    for r in 0..ROWS {
        t[r][..VARS].copy_from_slice(&a[r]);
        t[r][VARS + r] = 1.0;
        t[r][COLS - 1] = b[r];
    }
    let mut basis: [usize; ROWS] = std::array::from_fn(|r| VARS + r);

    // Objective w = sum of artificials, expressed over the nonbasic columns:
    // w = z_rhs + sum z_j x_j with the basic columns eliminated.
    let mut z = [0.0f64; COLS];
    for r in 0..ROWS {
        for j in 0..VARS {
            z[j] -= t[r][j];
        }
        z[COLS - 1] += t[r][COLS - 1];
    }

    for _ in 0..400 {
        // Bland: smallest column index that can decrease w.
        let Some(enter) = (0..COLS - 1).find(|&j| z[j] < -PIVOT_TOL) else {
            break;
        };
        // Ratio test, ties broken by smallest basis index.
        let mut leave: Option<usize> = None;
        let mut best_ratio = f64::INFINITY;
        for r in 0..ROWS {
            if t[r][enter] > PIVOT_TOL {
                let ratio = t[r][COLS - 1] / t[r][enter];
                if ratio < best_ratio - PIVOT_TOL
                    || ((ratio - best_ratio).abs() <= PIVOT_TOL
                        && leave.is_some_and(|l| basis[r] < basis[l]))
                {
                    best_ratio = ratio;
                    leave = Some(r);
                }
            }
        }
        let Some(pr) = leave else {
            break; // unbounded cannot happen here; play safe
        };
        // Pivot.
        let pivot = t[pr][enter];
        for j in 0..COLS {
            t[pr][j] /= pivot;
        }
        for r in 0..ROWS {
            if r != pr && t[r][enter].abs() > 0.0 {
                let factor = t[r][enter];
                for j in 0..COLS {
                    t[r][j] -= factor * t[pr][j];
                }
            }
        }
        let factor = z[enter];
        for j in 0..COLS - 1 {
            z[j] -= factor * t[pr][j];
        }
        // Substituting the entering variable shifts the objective constant
        // the other way: w = (z_rhs + z_enter * rhs) + sum (z_j - z_enter t_j) x_j.
        z[COLS - 1] += factor * t[pr][COLS - 1];
        basis[pr] = enter;
    }
    z[COLS - 1].max(0.0)
}
