//! `evaluate`: full report for one scenario file.

use std::path::Path;

use serde::Serialize;

use specker_core::lsw;

use crate::commands::vec_to_array;
use crate::error::CliError;
use crate::format::{self, OutputFormat};
use crate::scenario::{EtaSource, ScenarioFile};

#[derive(Debug, Serialize)]
struct PairDto {
    pair: &'static str,
    alpha: f64,
    a: [f64; 3],
    a_norm: f64,
    lower_slack: f64,
    upper_slack: f64,
}

#[derive(Debug, Serialize)]
struct ReportDto {
    eta: f64,
    eta_mode: String,
    open_boundary: bool,
    axes: [[f64; 3]; 3],
    r3_quantum: f64,
    bound_ks: f64,
    bound_lsw: f64,
    violation_s: f64,
    violation_c: f64,
    violated: bool,
    lambda_rho: f64,
    state: [f64; 3],
    optimal_state: [f64; 3],
    optimal_state_degenerate: bool,
    eta_window_lower: f64,
    eta_window_upper: f64,
    in_specker_window: bool,
    pairs: [PairDto; 3],
}

pub fn run(path: &Path, fmt: OutputFormat) -> Result<String, CliError> {
    let raw = std::fs::read_to_string(path)
        .map_err(|e| CliError::InvalidInput(format!("{}: {e}", path.display())))?;
    let scenario: ScenarioFile = serde_json::from_str(&raw)
        .map_err(|e| CliError::InvalidInput(format!("{}: {e}", path.display())))?;
    let resolved = scenario.resolve().map_err(CliError::InvalidInput)?;

    let report = lsw::scenario_report(&resolved.triple, &resolved.params, resolved.state)
        .map_err(|e| CliError::InvalidInput(e.to_string()))?;
    let window = resolved.triple.window();

    let (eta_mode, open_boundary) = match resolved.eta_source {
        EtaSource::Explicit => ("explicit".to_string(), false),
        EtaSource::Optimized {
            mode,
            open_boundary,
        } => (mode.to_string(), open_boundary),
    };
    let pair_names = ["12", "13", "23"];
    let dto = ReportDto {
        eta: report.eta,
        eta_mode,
        open_boundary,
        axes: std::array::from_fn(|k| vec_to_array(resolved.triple.axes()[k].vec())),
        r3_quantum: report.r3_quantum,
        bound_ks: report.bound_ks,
        bound_lsw: report.bound_lsw,
        violation_s: report.violation_s,
        violation_c: report.violation_c,
        violated: report.violated,
        lambda_rho: report.lambda_rho,
        state: vec_to_array(report.state.bloch()),
        optimal_state: vec_to_array(report.optimal_state.bloch()),
        optimal_state_degenerate: report.optimal_state_degenerate,
        eta_window_lower: window.eta_lower,
        eta_window_upper: window.eta_upper,
        in_specker_window: window.contains(report.eta),
        pairs: std::array::from_fn(|k| PairDto {
            pair: pair_names[k],
            alpha: resolved.params[k].alpha,
            a: vec_to_array(resolved.params[k].a),
            a_norm: report.diagnostics[k].a_norm,
            lower_slack: report.diagnostics[k].lower_slack,
            upper_slack: report.diagnostics[k].upper_slack,
        }),
    };

    Ok(match fmt {
        OutputFormat::Json => {
            serde_json::to_string_pretty(&dto).map_err(|e| CliError::Internal(e.to_string()))?
        }
        OutputFormat::Csv => render_csv(&dto),
        OutputFormat::Text => render_text(&dto),
    })
}

fn render_csv(dto: &ReportDto) -> String {
    let mut header = vec![
        "eta",
        "eta_mode",
        "open_boundary",
        "r3_quantum",
        "bound_ks",
        "bound_lsw",
        "violation_s",
        "violation_c",
        "violated",
        "lambda_rho",
        "state_x",
        "state_y",
        "state_z",
        "optimal_state_x",
        "optimal_state_y",
        "optimal_state_z",
        "optimal_state_degenerate",
        "eta_window_lower",
        "eta_window_upper",
        "in_specker_window",
    ];
    let mut row = vec![
        format::machine(dto.eta),
        dto.eta_mode.clone(),
        dto.open_boundary.to_string(),
        format::machine(dto.r3_quantum),
        format::machine(dto.bound_ks),
        format::machine(dto.bound_lsw),
        format::machine(dto.violation_s),
        format::machine(dto.violation_c),
        dto.violated.to_string(),
        format::machine(dto.lambda_rho),
        format::machine(dto.state[0]),
        format::machine(dto.state[1]),
        format::machine(dto.state[2]),
        format::machine(dto.optimal_state[0]),
        format::machine(dto.optimal_state[1]),
        format::machine(dto.optimal_state[2]),
        dto.optimal_state_degenerate.to_string(),
        format::machine(dto.eta_window_lower),
        format::machine(dto.eta_window_upper),
        dto.in_specker_window.to_string(),
    ];
    let pair_columns = ["alpha", "a_x", "a_y", "a_z", "lower_slack", "upper_slack"];
    let mut owned_headers = Vec::new();
    for p in &dto.pairs {
        for col in pair_columns {
            owned_headers.push(format!("{col}_{}", p.pair));
        }
        row.extend([
            format::machine(p.alpha),
            format::machine(p.a[0]),
            format::machine(p.a[1]),
            format::machine(p.a[2]),
            format::machine(p.lower_slack),
            format::machine(p.upper_slack),
        ]);
    }
    header.extend(owned_headers.iter().map(String::as_str));
    format::csv_document(&header, &[row])
}

fn render_text(dto: &ReportDto) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let h = format::human;
    let _ = writeln!(out, "scenario evaluation");
    let _ = writeln!(
        out,
        "  eta                 {} ({})",
        h(dto.eta),
        dto.eta_mode
    );
    if dto.open_boundary {
        let _ = writeln!(
            out,
            "  note                supremum on the open boundary eta -> eta_l"
        );
    }
    for (k, ax) in dto.axes.iter().enumerate() {
        let _ = writeln!(
            out,
            "  axis {}              ({}, {}, {})",
            k + 1,
            h(ax[0]),
            h(ax[1]),
            h(ax[2])
        );
    }
    let _ = writeln!(
        out,
        "  eta window          ({}, {}]",
        h(dto.eta_window_lower),
        h(dto.eta_window_upper)
    );
    let _ = writeln!(out, "  in specker window   {}", dto.in_specker_window);
    let _ = writeln!(out, "  r3 quantum          {}", h(dto.r3_quantum));
    let _ = writeln!(out, "  lsw bound           {}", h(dto.bound_lsw));
    let _ = writeln!(out, "  ks bound            {}", h(dto.bound_ks));
    let _ = writeln!(out, "  violation S         {}", h(dto.violation_s));
    let _ = writeln!(out, "  violation C         {}", h(dto.violation_c));
    let _ = writeln!(out, "  violated            {}", dto.violated);
    let _ = writeln!(out, "  lambda_rho          {}", h(dto.lambda_rho));
    let _ = writeln!(
        out,
        "  state               ({}, {}, {})",
        h(dto.state[0]),
        h(dto.state[1]),
        h(dto.state[2])
    );
    let _ = writeln!(
        out,
        "  optimal state       ({}, {}, {}){}",
        h(dto.optimal_state[0]),
        h(dto.optimal_state[1]),
        h(dto.optimal_state[2]),
        if dto.optimal_state_degenerate {
            " (degenerate: any state)"
        } else {
            ""
        }
    );
    for p in &dto.pairs {
        let _ = writeln!(
            out,
            "  pair {}             alpha {}  |a| {}  slack ({}, {})",
            p.pair,
            h(p.alpha),
            h(p.a_norm),
            h(p.lower_slack),
            h(p.upper_slack)
        );
    }
    out
}
