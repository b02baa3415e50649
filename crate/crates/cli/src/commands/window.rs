//! `window`: the Specker sharpness window for a triple of axes.

use std::path::Path;

use serde::Serialize;

use specker_core::joint_measurability::specker_window;
use specker_core::qubit_algebra::UnitAxis;
use specker_core::MeasurementTriple;

use crate::error::CliError;
use crate::format::{self, OutputFormat};
use crate::scenario::{AxesPreset, EtaSpec, ScenarioFile};

#[derive(Debug, Serialize)]
struct WindowDto {
    eta_lower: f64,
    eta_upper: f64,
    nonempty: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    eta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    in_specker_window: Option<bool>,
}

pub fn run(
    preset: Option<AxesPreset>,
    scenario_path: Option<&Path>,
    eta_flag: Option<f64>,
    fmt: OutputFormat,
) -> Result<String, CliError> {
    let (axes, scenario_eta) = match (preset, scenario_path) {
        (Some(_), Some(_)) => {
            return Err(CliError::InvalidInput(
                "give either --preset or --scenario, not both".into(),
            ))
        }
        (None, None) => {
            return Err(CliError::InvalidInput(
                "one of --preset or --scenario is required".into(),
            ))
        }
        (Some(AxesPreset::Trine), None) => (
            *MeasurementTriple::trine_zx(0.5)
                .expect("valid preset")
                .axes(),
            None,
        ),
        (Some(AxesPreset::Orthogonal), None) => ([UnitAxis::X, UnitAxis::Y, UnitAxis::Z], None),
        (None, Some(path)) => {
            let raw = std::fs::read_to_string(path)
                .map_err(|e| CliError::InvalidInput(format!("{}: {e}", path.display())))?;
            let file: ScenarioFile = serde_json::from_str(&raw)
                .map_err(|e| CliError::InvalidInput(format!("{}: {e}", path.display())))?;
            let resolved = file.resolve().map_err(CliError::InvalidInput)?;
            let eta = match file.eta {
                EtaSpec::Value(v) => Some(v),
                EtaSpec::Mode(_) => Some(resolved.triple.eta()),
            };
            (*resolved.triple.axes(), eta)
        }
    };

    let window = specker_window(&axes);
    let eta = eta_flag.or(scenario_eta);
    let dto = WindowDto {
        eta_lower: window.eta_lower,
        eta_upper: window.eta_upper,
        nonempty: window.nonempty(),
        eta,
        in_specker_window: eta.map(|e| window.contains(e)),
    };

    Ok(match fmt {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&dto).map_err(|e| CliError::Internal(e.to_string()))?
        }
        OutputFormat::Csv => {
            let header = [
                "eta_lower",
                "eta_upper",
                "nonempty",
                "eta",
                "in_specker_window",
            ];
            let row = vec![
                format::machine(dto.eta_lower),
                format::machine(dto.eta_upper),
                dto.nonempty.to_string(),
                dto.eta.map(format::machine).unwrap_or_default(),
                dto.in_specker_window
                    .map(|b| b.to_string())
                    .unwrap_or_default(),
            ];
            format::csv_document(&header, &[row])
        }
        OutputFormat::Text => {
            use std::fmt::Write;
            let mut out = String::new();
            let h = format::human;
            let _ = writeln!(out, "specker window");
            let _ = writeln!(out, "  eta_lower  {}", h(dto.eta_lower));
            let _ = writeln!(out, "  eta_upper  {}", h(dto.eta_upper));
            let _ = writeln!(out, "  nonempty   {}", dto.nonempty);
            if let Some(e) = dto.eta {
                let _ = writeln!(out, "  eta        {}", h(e));
                let _ = writeln!(out, "  in window  {}", dto.in_specker_window.unwrap());
            }
            out
        }
    })
}
