//! Output-format helpers.
//!
//! Machine formats (JSON, CSV) carry 17 significant digits so values
//! round-trip bit-exactly; human text uses 6.

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

/// 17 significant digits, for CSV cells.
pub fn machine(x: f64) -> String {
    format!("{x:.16e}")
}

/// 6 digits, for console output.
pub fn human(x: f64) -> String {
    format!("{x:.6}")
}

/// Builds a CSV document (comma-separated, LF line endings) from
/// pre-formatted cells.
pub fn csv_document(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = String::new();
    out.push_str(&header.join(","));
    out.push('\n');
    for row in rows {
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}
