//! Row files: CSV with a fixed column order and 12 significant digits, JSON
//! with round-trip precision, and a plot-ready ratio file.

use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::config::OutputConfig;
use crate::error::{CliError, Result};
use crate::sweep::{SweepOutcome, SweepRow, RATIO_COLUMNS};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

pub const CSV_COLUMNS: [&str; 25] = [
    "family",
    "parameter",
    "atoms",
    "tau_kind",
    "tau",
    "tau_statulevicius",
    "tau_bernstein",
    "tau_as",
    "sigma",
    "rho",
    "levy",
    "w1",
    "w2",
    "wpsi",
    "w1_over_tau",
    "wpsi_over_tau",
    "rho_sigma_over_tau",
    "smoothing_bound",
    "tail_multiplier",
    "c7",
    "c11_c10_0_1",
    "c11_c10_0_2",
    "c11_c10_0_5",
    "error",
    "ok",
];

/// 12 significant digits in scientific notation; empty when missing.
pub fn format_value(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.11e}")).unwrap_or_default()
}

fn csv_fields(r: &SweepRow) -> Vec<String> {
    let tau_kind = serde_json::to_value(r.tau_kind).ok().and_then(|v| v.as_str().map(String::from));
    let mut f = vec![
        r.family.clone(),
        format_value(Some(r.parameter)),
        r.atoms.map(|n| n.to_string()).unwrap_or_default(),
        tau_kind.unwrap_or_default(),
    ];
    f.extend(
        [
            r.tau,
            r.tau_statulevicius,
            r.tau_bernstein,
            r.tau_as,
            r.sigma,
            r.rho,
            r.levy,
            r.w1,
            r.w2,
            r.wpsi,
            r.w1_over_tau,
            r.wpsi_over_tau,
            r.rho_sigma_over_tau,
            r.smoothing_bound,
            r.tail_multiplier,
            r.c7,
            r.c11_c10_0_1,
            r.c11_c10_0_2,
            r.c11_c10_0_5,
        ]
        .map(format_value),
    );
    f.push(r.error.clone().unwrap_or_default());
    f.push(r.error.is_none().to_string());
    f
}

fn csv_string<I, R>(header: &[&str], records: I) -> Result<String>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in records {
        w.write_record(r)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::io("csv buffer", e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn require_rows(rows: &[SweepRow]) -> Result<()> {
    if rows.is_empty() {
        return Err(CliError::Config("no rows to report".into()));
    }
    Ok(())
}

pub fn rows_to_csv(rows: &[SweepRow]) -> Result<String> {
    require_rows(rows)?;
    csv_string(&CSV_COLUMNS, rows.iter().map(csv_fields))
}

pub fn rows_to_json(rows: &[SweepRow]) -> Result<String> {
    require_rows(rows)?;
    Ok(serde_json::to_string_pretty(rows)? + "\n")
}

pub fn rows_from_json(text: &str) -> Result<Vec<SweepRow>> {
    Ok(serde_json::from_str(text)?)
}

/// `parameter` against each ratio column, formatted exactly as in the CSV.
pub fn plot_companion(rows: &[SweepRow]) -> Result<String> {
    require_rows(rows)?;
    let mut header = vec!["parameter"];
    header.extend(RATIO_COLUMNS.iter().map(|c| c.0));
    csv_string(
        &header,
        rows.iter().map(|r| {
            std::iter::once(format_value(Some(r.parameter)))
                .chain(RATIO_COLUMNS.iter().map(|(_, get)| format_value(get(r))))
                .collect::<Vec<_>>()
        }),
    )
}

pub fn render(rows: &[SweepRow], format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Csv => rows_to_csv(rows),
        ReportFormat::Json => rows_to_json(rows),
    }
}

fn write(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn emit_report(rows: &[SweepRow], format: ReportFormat, path: &Path) -> Result<()> {
    write(path, &render(rows, format)?)
}

fn pretty<T: Serialize>(v: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

/// Writes every file named in `out`. All contents are rendered before the
/// first write, so a rendering failure leaves no partial output.
pub fn write_outputs(outcome: &SweepOutcome, out: &OutputConfig) -> Result<()> {
    let rows = &outcome.rows;
    let mut files = Vec::new();
    if let Some(p) = &out.csv {
        files.push((p, rows_to_csv(rows)?));
    }
    if let Some(p) = &out.json {
        files.push((p, rows_to_json(rows)?));
    }
    if let Some(p) = &out.plot {
        files.push((p, plot_companion(rows)?));
    }
    if let Some(p) = &out.summary {
        files.push((p, pretty(&outcome.summary)?));
    }
    if let Some(p) = &out.timings {
        let text = csv_string(
            &["parameter", "runtime_ms"],
            rows.iter()
                .zip(&outcome.runtimes_ms)
                .map(|(r, t)| vec![format_value(Some(r.parameter)), format!("{t:.3}")]),
        )?;
        files.push((p, text));
    }
    for (p, text) in files {
        write(p, &text)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_value(Some(0.1)), "1.00000000000e-1");
        assert_eq!(format_value(Some(1234.5678901234)), "1.23456789012e3");
        assert_eq!(format_value(None), "");
    }

    #[test]
    fn empty_rows_are_rejected() {
        assert!(rows_to_csv(&[]).is_err());
        assert!(rows_to_json(&[]).is_err());
        assert!(plot_companion(&[]).is_err());
    }

    #[test]
    fn column_list_matches_fields() {
        let row: SweepRow = serde_json::from_str(
            r#"{"family":"x","parameter":1.0,"atoms":null,"tau_kind":"as_bound","tau":null,
            "tau_statulevicius":null,"tau_bernstein":null,"tau_as":null,"sigma":null,"rho":null,
            "levy":null,"w1":null,"w2":null,"wpsi":null,"w1_over_tau":null,"wpsi_over_tau":null,
            "rho_sigma_over_tau":null,"smoothing_bound":null,"tail_multiplier":null,"c7":null,
            "c11_c10_0_1":null,"c11_c10_0_2":null,"c11_c10_0_5":null,"error":"a, b"}"#,
        )
        .unwrap();
        assert_eq!(csv_fields(&row).len(), CSV_COLUMNS.len());
        let text = rows_to_csv(&[row]).unwrap();
        assert!(text.contains("\"a, b\""));
    }
}
