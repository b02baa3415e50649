//! `sweep`: CSV curve of the optimal violation against sharpness for a
//! preset axis triple. Always emits CSV regardless of `--format`.

use specker_core::joint_measurability::{eta_upper, specker_window, PAIRS};
use specker_core::lsw;
use specker_core::optimizer::c_max_closed_form;
use specker_core::qubit_algebra::{UnitAxis, TOL_ALG};
use specker_core::MeasurementTriple;

use crate::error::CliError;
use crate::format;
use crate::scenario::{optimal_params_for_axes, AxesPreset};

pub fn run(preset: AxesPreset, eta_min: f64, eta_max: f64, step: f64) -> Result<String, CliError> {
    if step <= 0.0 {
        return Err(CliError::InvalidInput(format!(
            "step must be positive, got {step}"
        )));
    }
    let axes = match preset {
        AxesPreset::Trine => *MeasurementTriple::trine_zx(0.5)
            .expect("valid preset")
            .axes(),
        AxesPreset::Orthogonal => [UnitAxis::X, UnitAxis::Y, UnitAxis::Z],
    };
    let upper = eta_upper(&axes);
    if eta_min <= 0.0 {
        return Err(CliError::InvalidInput(format!(
            "eta range must start above 0, got {eta_min}"
        )));
    }
    if eta_max > upper + TOL_ALG {
        return Err(CliError::InvalidInput(format!(
            "eta range must stay within pairwise compatibility (eta <= {upper}), got {eta_max}"
        )));
    }
    let window = specker_window(&axes);
    let cosines = PAIRS.map(|(i, j)| axes[i].dot(axes[j]));

    let header = [
        "eta",
        "c_max",
        "s",
        "r3_quantum",
        "lsw_bound",
        "in_specker_window",
    ];
    let mut rows = Vec::new();
    let mut k = 0u64;
    loop {
        let eta = eta_min + step * k as f64;
        if eta > eta_max + 1e-12 {
            break;
        }
        let c = c_max_closed_form(&cosines, eta).map_err(|e| CliError::Internal(e.to_string()))?;
        let params = optimal_params_for_axes(&axes, eta).map_err(CliError::InvalidInput)?;
        let triple =
            MeasurementTriple::new(axes, eta).map_err(|e| CliError::Internal(e.to_string()))?;
        let report = lsw::scenario_report(&triple, &params, None)
            .map_err(|e| CliError::Internal(e.to_string()))?;
        rows.push(vec![
            format::machine(eta),
            format::machine(c),
            format::machine(c / 6.0),
            format::machine(report.r3_quantum),
            format::machine(report.bound_lsw),
            window.contains(eta).to_string(),
        ]);
        k += 1;
    }
    Ok(format::csv_document(&header, &rows))
}
