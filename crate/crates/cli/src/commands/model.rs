//! `model`: the noncontextual response-function model bound and the
//! joint-distribution feasibility demonstrations.

use serde::Serialize;

use specker_core::joint_measurability::PAIRS;
use specker_core::joint_povm;
use specker_core::lsw;
use specker_core::ont_model::{
    joint_feasibility, model_r3_max, sample_pair, HiddenAssignment, PairwiseDistribution,
};
use specker_core::optimizer;
use specker_core::qubit_algebra::{QubitState, UnitAxis};
use specker_core::MeasurementTriple;

use crate::error::CliError;
use crate::format::{self, OutputFormat};

#[derive(Debug, Serialize)]
struct FeasibilityDto {
    /// Independent fair coins for every pair: a joint distribution exists.
    product_pairs: bool,
    /// All three pairs perfectly anticorrelated: parity obstruction.
    perfect_anticorrelation: bool,
    /// The model's pair responses at a fixed assignment and the given eta.
    model_at_assignment: bool,
    /// Quantum pairwise statistics of the optimal trine configuration.
    quantum_trine_optimum: bool,
}

#[derive(Debug, Serialize)]
struct SamplingDto {
    samples: u64,
    seed: u64,
    max_abs_deviation: f64,
}

#[derive(Debug, Serialize)]
struct ModelDto {
    eta: f64,
    r3_max: f64,
    r3_max_closed_form: f64,
    maximizing_assignment: [u8; 3],
    ks_bound: f64,
    feasible: FeasibilityDto,
    #[serde(skip_serializing_if = "Option::is_none")]
    sampling: Option<SamplingDto>,
}

pub fn run(eta: f64, seed: u64, samples: u64, fmt: OutputFormat) -> Result<String, CliError> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(CliError::InvalidInput(format!(
            "sharpness must lie in [0, 1], got {eta}"
        )));
    }
    let (r3_max, assignment) = model_r3_max(eta);
    let internal = |e: &dyn std::fmt::Display| CliError::Internal(e.to_string());

    let product = PairwiseDistribution::new([0.25; 4]).map_err(|e| internal(&e))?;
    let anti = PairwiseDistribution::new([0.0, 0.5, 0.5, 0.0]).map_err(|e| internal(&e))?;
    let lambda = HiddenAssignment::new(0, 0, 1);
    let model_dists = [
        PairwiseDistribution::from_model(eta, lambda, (0, 1)),
        PairwiseDistribution::from_model(eta, lambda, (0, 2)),
        PairwiseDistribution::from_model(eta, lambda, (1, 2)),
    ];

    // Quantum statistics of the optimal trine configuration at eta -> 2/3.
    let trine = MeasurementTriple::trine_zx(2.0 / 3.0).map_err(|e| internal(&e))?;
    let obs = trine.observables();
    let params =
        optimizer::optimal_joint_params(-0.5, 2.0 / 3.0, UnitAxis::Y).map_err(|e| internal(&e))?;
    let state = QubitState::pure(UnitAxis::Y);
    let mut quantum_dists = Vec::with_capacity(3);
    for (i, j) in PAIRS {
        let joint =
            joint_povm::construct_joint(&obs[i], &obs[j], &params).map_err(|e| internal(&e))?;
        quantum_dists.push(PairwiseDistribution::from_joint_measurement(&state, &joint));
    }

    let feasible = FeasibilityDto {
        product_pairs: joint_feasibility(&product, &product, &product).map_err(|e| internal(&e))?,
        perfect_anticorrelation: joint_feasibility(&anti, &anti, &anti)
            .map_err(|e| internal(&e))?,
        model_at_assignment: joint_feasibility(&model_dists[0], &model_dists[1], &model_dists[2])
            .map_err(|e| internal(&e))?,
        quantum_trine_optimum: joint_feasibility(
            &quantum_dists[0],
            &quantum_dists[1],
            &quantum_dists[2],
        )
        .map_err(|e| internal(&e))?,
    };

    let sampling = (samples > 0).then(|| {
        let exact = PairwiseDistribution::from_model(eta, lambda, (0, 2));
        let empirical = sample_pair(eta, lambda, (0, 2), samples, seed, 0);
        let mut max_dev = 0.0f64;
        for xi in 0..2u8 {
            for xj in 0..2u8 {
                max_dev = max_dev.max((empirical.prob(xi, xj) - exact.prob(xi, xj)).abs());
            }
        }
        SamplingDto {
            samples,
            seed,
            max_abs_deviation: max_dev,
        }
    });

    let dto = ModelDto {
        eta,
        r3_max,
        r3_max_closed_form: 1.0 - eta / 3.0,
        maximizing_assignment: [
            assignment.outcome(0),
            assignment.outcome(1),
            assignment.outcome(2),
        ],
        ks_bound: lsw::KS_BOUND,
        feasible,
        sampling,
    };

    Ok(match fmt {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&dto).map_err(|e| CliError::Internal(e.to_string()))?
        }
        OutputFormat::Csv => {
            let header = ["quantity", "value"];
            let mut rows = vec![
                vec!["eta".into(), format::machine(dto.eta)],
                vec!["r3_max".into(), format::machine(dto.r3_max)],
                vec![
                    "r3_max_closed_form".into(),
                    format::machine(dto.r3_max_closed_form),
                ],
                vec![
                    "maximizing_assignment".into(),
                    format!(
                        "{}{}{}",
                        dto.maximizing_assignment[0],
                        dto.maximizing_assignment[1],
                        dto.maximizing_assignment[2]
                    ),
                ],
                vec!["ks_bound".into(), format::machine(dto.ks_bound)],
                vec![
                    "feasible_product_pairs".into(),
                    dto.feasible.product_pairs.to_string(),
                ],
                vec![
                    "feasible_perfect_anticorrelation".into(),
                    dto.feasible.perfect_anticorrelation.to_string(),
                ],
                vec![
                    "feasible_model_at_assignment".into(),
                    dto.feasible.model_at_assignment.to_string(),
                ],
                vec![
                    "feasible_quantum_trine_optimum".into(),
                    dto.feasible.quantum_trine_optimum.to_string(),
                ],
            ];
            if let Some(s) = &dto.sampling {
                rows.push(vec!["mc_samples".into(), s.samples.to_string()]);
                rows.push(vec!["mc_seed".into(), s.seed.to_string()]);
                rows.push(vec![
                    "mc_max_abs_deviation".into(),
                    format::machine(s.max_abs_deviation),
                ]);
            }
            format::csv_document(&header, &rows)
        }
        OutputFormat::Text => {
            use std::fmt::Write;
            let h = format::human;
            let mut out = String::new();
            let _ = writeln!(out, "noncontextual model at eta = {}", h(dto.eta));
            let _ = writeln!(out, "  r3 max                {}", h(dto.r3_max));
            let _ = writeln!(out, "  closed form 1 - eta/3 {}", h(dto.r3_max_closed_form));
            let _ = writeln!(
                out,
                "  maximizing assignment ({}, {}, {})",
                dto.maximizing_assignment[0],
                dto.maximizing_assignment[1],
                dto.maximizing_assignment[2]
            );
            let _ = writeln!(out, "  ks bound (eta = 1)    {}", h(dto.ks_bound));
            let _ = writeln!(out, "joint-distribution feasibility");
            let _ = writeln!(
                out,
                "  product pairs             {}",
                dto.feasible.product_pairs
            );
            let _ = writeln!(
                out,
                "  perfect anticorrelation   {}",
                dto.feasible.perfect_anticorrelation
            );
            let _ = writeln!(
                out,
                "  model at fixed assignment {}",
                dto.feasible.model_at_assignment
            );
            let _ = writeln!(
                out,
                "  quantum trine optimum     {}",
                dto.feasible.quantum_trine_optimum
            );
            if let Some(s) = &dto.sampling {
                let _ = writeln!(out, "monte carlo ({} samples, seed {})", s.samples, s.seed);
                let _ = writeln!(out, "  max abs deviation     {:.3e}", s.max_abs_deviation);
            }
            out
        }
    })
}
