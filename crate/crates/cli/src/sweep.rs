//! Parameter sweeps: one row of distances, certificates and band constants
//! per family instance.
//!
//! Rows are computed concurrently, each on a single thread, and sorted by
//! parameter afterwards, so the output does not depend on scheduling.

use std::time::Instant;

use clt_transport::bounds::{coupling_band_report, smoothing_rho_bound, tail_bound_verify, C10_SWEEP};
use clt_transport::cumulants::{bernstein_tau_1d, statulevicius_tau};
use clt_transport::transport::{
    kolmogorov_distance, levy_distance, orlicz_wasserstein_log_gaussian, w1_distance, wp_distance,
};
use clt_transport::{Distribution1d, GaussianLaw, Law};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::assertions::{evaluate, AssertionOutcome};
use crate::config::{FamilyKind, Metric, SweepConfig};
use crate::error::Result;
use crate::family::{self, TauKind};

/// Results for one family instance. Missing values are `None`; the reason
/// is collected in `error`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub family: String,
    /// `n` for sums, `λ` for Poisson.
    pub parameter: f64,
    pub atoms: Option<usize>,
    pub tau_kind: TauKind,
    /// The τ used by the ratio columns.
    pub tau: Option<f64>,
    pub tau_statulevicius: Option<f64>,
    pub tau_bernstein: Option<f64>,
    pub tau_as: Option<f64>,
    pub sigma: Option<f64>,
    pub rho: Option<f64>,
    pub levy: Option<f64>,
    pub w1: Option<f64>,
    pub w2: Option<f64>,
    pub wpsi: Option<f64>,
    pub w1_over_tau: Option<f64>,
    pub wpsi_over_tau: Option<f64>,
    pub rho_sigma_over_tau: Option<f64>,
    /// Smoothing bound on ρ at `T = 1/τ`.
    pub smoothing_bound: Option<f64>,
    /// Smallest τ-multiplier of the tail comparison.
    pub tail_multiplier: Option<f64>,
    /// Minimal constants of the coupling bands; `None` for an empty region.
    pub c7: Option<f64>,
    pub c11_c10_0_1: Option<f64>,
    pub c11_c10_0_2: Option<f64>,
    pub c11_c10_0_5: Option<f64>,
    pub error: Option<String>,
}

impl SweepRow {
    fn empty(family: &str, parameter: f64, tau_kind: TauKind) -> Self {
        Self {
            family: family.to_string(),
            parameter,
            atoms: None,
            tau_kind,
            tau: None,
            tau_statulevicius: None,
            tau_bernstein: None,
            tau_as: None,
            sigma: None,
            rho: None,
            levy: None,
            w1: None,
            w2: None,
            wpsi: None,
            w1_over_tau: None,
            wpsi_over_tau: None,
            rho_sigma_over_tau: None,
            smoothing_bound: None,
            tail_multiplier: None,
            c7: None,
            c11_c10_0_1: None,
            c11_c10_0_2: None,
            c11_c10_0_5: None,
            error: None,
        }
    }

    /// c₁₁ at one of the swept `c₁₀` values.
    pub fn c11(&self, c10: f64) -> Option<f64> {
        match C10_SWEEP.iter().position(|&c| c == c10) {
            Some(0) => self.c11_c10_0_1,
            Some(1) => self.c11_c10_0_2,
            Some(2) => self.c11_c10_0_5,
            _ => None,
        }
    }
}

/// Reads one optional column of a row.
pub type Column = fn(&SweepRow) -> Option<f64>;

/// Ratio columns: name and accessor.
pub const RATIO_COLUMNS: [(&str, Column); 3] = [
    ("w1_over_tau", |r| r.w1_over_tau),
    ("wpsi_over_tau", |r| r.wpsi_over_tau),
    ("rho_sigma_over_tau", |r| r.rho_sigma_over_tau),
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ColumnRange {
    pub column: String,
    pub min: Option<f64>,
    pub max: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub family: String,
    pub rows: usize,
    pub failed_rows: usize,
    pub ratios: Vec<ColumnRange>,
    pub assertions: Vec<AssertionOutcome>,
    /// All assertions passed.
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    pub summary: SweepSummary,
    /// Wall-clock milliseconds per row, aligned with `rows`.
    pub runtimes_ms: Vec<f64>,
}

fn finite(v: f64, what: &str, errors: &mut Vec<String>) -> Option<f64> {
    if v.is_finite() && v >= 0.0 {
        Some(v)
    } else {
        errors.push(format!("{what}: non-finite or negative value {v}"));
        None
    }
}

fn record<T>(r: clt_transport::Result<T>, what: &str, errors: &mut Vec<String>) -> Option<T> {
    r.map_err(|e| errors.push(format!("{what}: {e}"))).ok()
}

fn tau_kind(kind: &FamilyKind) -> TauKind {
    match kind {
        FamilyKind::Poisson | FamilyKind::Custom { .. } => TauKind::Statulevicius,
        _ => TauKind::AsBound,
    }
}

/// Computes one row. Failures of individual quantities are recorded in the
/// row and do not stop the others.
pub fn compute_row(
    config: &SweepConfig,
    base: Option<&clt_transport::LatticeDistribution>,
    parameter: f64,
) -> SweepRow {
    let kind = tau_kind(&config.family.kind);
    let mut row = SweepRow::empty(config.family.kind.id(), parameter, kind);
    let mut errors = Vec::new();
    let inst = match family::build(&config.family, base, parameter) {
        Ok(i) => i,
        Err(e) => {
            row.error = Some(format!("construction: {e}"));
            return row;
        }
    };
    let d = &inst.law;
    let metrics = &config.metrics;
    row.atoms = Some(d.len());
    row.sigma = Some(d.variance().sqrt());
    row.tau_as = inst.tau_as;
    let order = metrics.cumulant_order;
    row.tau_statulevicius =
        record(statulevicius_tau(d, order), "statulevicius", &mut errors).map(|c| c.tau_estimate);
    row.tau_bernstein = record(bernstein_tau_1d(d, order), "bernstein", &mut errors).map(|c| c.tau_estimate);
    row.tau = match kind {
        TauKind::AsBound => row.tau_as,
        TauKind::Statulevicius => row.tau_statulevicius,
    }
    .filter(|&t| t > 0.0);

    let f: Law = d.clone().into();
    let g: Law = match d.gaussian_companion() {
        Ok(g) => g.into(),
        Err(e) => {
            errors.push(format!("companion: {e}"));
            row.error = Some(errors.join("; "));
            return row;
        }
    };
    if metrics.wants(Metric::Rho) {
        row.rho = finite(kolmogorov_distance(&f, &g).value, "rho", &mut errors);
    }
    if metrics.wants(Metric::Levy) {
        row.levy = finite(levy_distance(&f, &g).value, "levy", &mut errors);
    }
    if metrics.wants(Metric::W1) {
        row.w1 = record(w1_distance(&f, &g), "w1", &mut errors).and_then(|r| finite(r.value, "w1", &mut errors));
    }
    if metrics.wants(Metric::W2) {
        row.w2 =
            record(wp_distance(&f, &g, 2.0), "w2", &mut errors).and_then(|r| finite(r.value, "w2", &mut errors));
    }
    if metrics.wants(Metric::Wpsi) {
        // validated with the config
        let cost = metrics.cost().expect("validated cost");
        let log_law = &inst.log_law;
        row.wpsi = record(
            GaussianLaw::new(log_law.mean(), log_law.variance()).and_then(|g| {
                orlicz_wasserstein_log_gaussian(log_law, &g, cost, config.tolerances.orlicz())
            }),
            "wpsi",
            &mut errors,
        )
        .and_then(|r| finite(r.value, "wpsi", &mut errors));
    }

    if let Some(tau) = row.tau {
        row.w1_over_tau = row.w1.map(|w| w / tau);
        row.wpsi_over_tau = row.wpsi.map(|w| w / tau);
        row.rho_sigma_over_tau = row.rho.zip(row.sigma).map(|(r, s)| r * s / tau);
        if metrics.smoothing {
            row.smoothing_bound = record(smoothing_rho_bound(d, 1.0 / tau), "smoothing", &mut errors)
                .and_then(|b| finite(b.value, "smoothing", &mut errors));
        }
        if metrics.tail {
            row.tail_multiplier = record(tail_bound_verify(d, tau), "tail", &mut errors)
                .and_then(|b| finite(b.minimal_constant, "tail", &mut errors));
        }
        if metrics.bands {
            if let Some(b) = record(coupling_band_report(d, tau), "bands", &mut errors) {
                let constant = |r: &clt_transport::bounds::BandReport, errors: &mut Vec<String>| {
                    if r.is_empty() {
                        None
                    } else {
                        finite(r.minimal_constant, &r.label, errors)
                    }
                };
                row.c7 = constant(&b.center, &mut errors);
                for m in &b.moderate {
                    let c = constant(&m.band, &mut errors);
                    match C10_SWEEP.iter().position(|&x| x == m.c10) {
                        Some(0) => row.c11_c10_0_1 = c,
                        Some(1) => row.c11_c10_0_2 = c,
                        Some(2) => row.c11_c10_0_5 = c,
                        _ => {}
                    }
                }
            }
        }
    } else {
        errors.push("tau unavailable; ratio and band columns skipped".into());
    }
    if !errors.is_empty() {
        row.error = Some(errors.join("; "));
    }
    row
}

fn column_range(rows: &[SweepRow], name: &str, get: fn(&SweepRow) -> Option<f64>) -> ColumnRange {
    let vals: Vec<f64> = rows.iter().filter_map(get).collect();
    ColumnRange {
        column: name.to_string(),
        min: vals.iter().copied().reduce(f64::min),
        max: vals.iter().copied().reduce(f64::max),
    }
}

pub fn summarize(config: &SweepConfig, rows: &[SweepRow]) -> SweepSummary {
    let assertions = evaluate(&config.assertions, rows);
    SweepSummary {
        family: config.family.kind.id().to_string(),
        rows: rows.len(),
        failed_rows: rows.iter().filter(|r| r.error.is_some()).count(),
        ratios: RATIO_COLUMNS.iter().map(|&(n, get)| column_range(rows, n, get)).collect(),
        passed: assertions.iter().all(|a| a.passed),
        assertions,
    }
}

/// Runs every grid value of a validated config. Only config and family
/// file problems are errors; everything else lands in the rows.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepOutcome> {
    config.validate()?;
    let base = family::load_base(&config.family)?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(config.run.threads).build()?;
    let mut timed: Vec<(SweepRow, f64)> = pool.install(|| {
        config
            .grid
            .values
            .par_iter()
            .map(|&p| {
                let start = Instant::now();
                let row = compute_row(config, base.as_ref(), p);
                (row, start.elapsed().as_secs_f64() * 1e3)
            })
            .collect()
    });
    timed.sort_by(|a, b| a.0.parameter.total_cmp(&b.0.parameter));
    let (rows, runtimes_ms): (Vec<_>, Vec<_>) = timed.into_iter().unzip();
    let summary = summarize(config, &rows);
    Ok(SweepOutcome { rows, summary, runtimes_ms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(text: &str) -> SweepConfig {
        SweepConfig::parse(text).unwrap()
    }

    #[test]
    fn single_rademacher_row() {
        let cfg = config("[family]\nkind = \"rademacher_sum\"\n[grid]\nvalues = [1]\n");
        let row = compute_row(&cfg, None, 1.0);
        assert_eq!(row.error, None);
        assert_eq!(row.tau, Some(1.0));
        assert!((row.w1.unwrap() - 0.5353773215478798).abs() < 1e-12);
        assert!((row.rho_sigma_over_tau.unwrap() - 0.3413447460685429).abs() < 1e-12);
        assert!((row.wpsi.unwrap() - 0.8825178564104586).abs() < 1e-8);
        // γ₄ = -2 alone gives 6^{-1/2}; at order 8 the binding cumulant is γ₈ = -272
        let tau8 = (2.0f64 * 272.0 / 40320.0).powf(1.0 / 6.0);
        assert!((row.tau_statulevicius.unwrap() - tau8).abs() < 1e-12);
    }

    #[test]
    fn rows_are_sorted_and_independent_of_threads() {
        let text = "[family]\nkind = \"poisson\"\n[grid]\nvalues = [5, 1, 2]\n[metrics]\ndistances = [\"rho\", \"w1\"]\n";
        let mut cfg = config(text);
        let one = run_sweep(&cfg).unwrap();
        cfg.run.threads = 3;
        let three = run_sweep(&cfg).unwrap();
        assert_eq!(one.rows, three.rows);
        assert_eq!(one.summary, three.summary);
        let params: Vec<f64> = one.rows.iter().map(|r| r.parameter).collect();
        assert_eq!(params, vec![1.0, 2.0, 5.0]);
        assert!(one.rows.iter().all(|r| r.wpsi.is_none() && r.w1.is_some()));
        assert_eq!(one.rows[0].tau_kind, TauKind::Statulevicius);
    }

    #[test]
    fn row_failures_are_recorded() {
        let cfg = config("[family]\nkind = \"rademacher_sum\"\n[grid]\nvalues = [1]\n");
        let row = compute_row(&cfg, None, 0.5);
        assert!(row.error.unwrap().starts_with("construction"));
        assert_eq!(row.w1, None);
    }
}
