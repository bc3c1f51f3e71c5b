//! Report rows and the CSV/JSON writers.
//!
//! The CSV schema is fixed:
//! `label,bond_length,e_hf,e_fci,e_method,error,n_params,n_cnots,n_evals,wall_s`
//! with UTF-8 and LF line endings. Energies carry 12 significant digits so
//! golden files stay stable well beyond chemical accuracy.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use crate::{CliError, Result};

pub const CSV_HEADER: &str =
    "label,bond_length,e_hf,e_fci,e_method,error,n_params,n_cnots,n_evals,wall_s";

/// One per-geometry result row.
#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub label: String,
    /// Geometry label parsed from the file name, if any (printed verbatim).
    pub bond_length: Option<String>,
    pub e_hf: f64,
    pub e_fci: f64,
    pub e_method: f64,
    pub error: f64,
    pub n_params: u64,
    pub n_cnots: u64,
    pub n_evals: u64,
    /// Seconds; 0.0 unless timing was requested.
    pub wall_s: f64,
}

/// 12 significant digits, scientific notation.
pub fn fmt_energy(x: f64) -> String {
    format!("{x:.11e}")
}

impl Row {
    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{:.3}",
            self.label,
            self.bond_length.as_deref().unwrap_or(""),
            fmt_energy(self.e_hf),
            fmt_energy(self.e_fci),
            fmt_energy(self.e_method),
            fmt_energy(self.error),
            self.n_params,
            self.n_cnots,
            self.n_evals,
            self.wall_s,
        )
    }
}

/// Renders a complete CSV document from rows already in final order.
pub fn render_csv(rows: &[Row]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv_line());
        out.push('\n');
    }
    out
}

/// Renders a CSV where some labels keep previously written lines verbatim
/// (resume) and the rest come from fresh rows; lines are sorted by label.
pub fn render_csv_with_resumed(rows: &[Row], resumed: &BTreeMap<String, String>) -> String {
    let mut lines: BTreeMap<String, String> = resumed.clone();
    for row in rows {
        lines.insert(row.label.clone(), row.to_csv_line());
    }
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for line in lines.values() {
        out.push_str(line);
        out.push('\n');
    }
    out
}

/// Reads the labels of an existing report so a sweep can skip them.
pub fn read_existing_labels(path: &Path) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    if !path.exists() {
        return Ok(out);
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::parse(format!("reading {}: {e}", path.display())))?;
    for line in text.lines().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let label = line.split(',').next().unwrap_or("").to_string();
        if !label.is_empty() {
            out.insert(label, line.to_string());
        }
    }
    Ok(out)
}

/// Per-iteration record of an adaptive run, serialized into the JSON report.
#[derive(Debug, Clone, Serialize)]
pub struct AdaptIterationReport {
    pub iteration: usize,
    pub operator: String,
    pub pool_index: usize,
    pub gradient: f64,
    pub energy: f64,
    pub n_params: u64,
    pub n_cnots: u64,
    pub particle_number: f64,
    pub candidate_vqes: usize,
}

/// Full single-run detail behind one CSV row.
#[derive(Debug, Clone, Serialize)]
pub struct RunDetail {
    pub label: String,
    pub ansatz: String,
    pub optimizer: String,
    pub seed: u64,
    pub row: Row,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stop_reason: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub adapt_iterations: Vec<AdaptIterationReport>,
}

/// Pool dump entry for the `pools` verb.
#[derive(Debug, Clone, Serialize)]
pub struct PoolEntry {
    pub index: usize,
    pub label: String,
    pub terms: usize,
    pub cnot_count: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PoolReport {
    pub flavor: String,
    pub n_qubits: usize,
    pub size: usize,
    pub generators: Vec<PoolEntry>,
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .map_err(|e| CliError::config(format!("creating {}: {e}", parent.display())))?;
        }
    }
    std::fs::write(path, text)
        .map_err(|e| CliError::config(format!("writing {}: {e}", path.display())))
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("report types serialize");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_row() -> Row {
        Row {
            label: "h2_0.735".into(),
            bond_length: Some("0.735".into()),
            e_hf: -1.116998997,
            e_fci: -1.137306036,
            e_method: -1.137306031,
            error: 5e-9,
            n_params: 3,
            n_cnots: 56,
            n_evals: 123,
            wall_s: 0.0,
        }
    }

    #[test]
    fn csv_line_format() {
        let line = sample_row().to_csv_line();
        assert!(line.starts_with("h2_0.735,0.735,-1.11699899700e0,-1.13730603600e0,"));
        assert!(line.ends_with(",3,56,123,0.000"));
    }

    #[test]
    fn energies_have_12_significant_digits() {
        assert_eq!(fmt_energy(-1.0), "-1.00000000000e0");
        assert_eq!(fmt_energy(-7.882401932), "-7.88240193200e0");
    }

    #[test]
    fn resumed_lines_survive_verbatim_and_sorted() {
        let mut resumed = BTreeMap::new();
        resumed.insert("h2_0.300".to_string(), "h2_0.300,0.300,1,2,3,4,5,6,7,0.000".to_string());
        let csv = render_csv_with_resumed(&[sample_row()], &resumed);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], "h2_0.300,0.300,1,2,3,4,5,6,7,0.000");
        assert!(lines[2].starts_with("h2_0.735,"));
    }
}
