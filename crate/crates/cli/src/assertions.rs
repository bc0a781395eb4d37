//! Sweep-level checks over the finished rows.

use clt_transport::bounds::BAND_SLACK;
use serde::{Deserialize, Serialize};

use crate::config::Assertions;
use crate::sweep::SweepRow;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssertionOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

fn outcome(name: &str, passed: bool, detail: String) -> AssertionOutcome {
    AssertionOutcome { name: name.to_string(), passed, detail }
}

/// Values of one column, or the parameters of the rows missing it.
fn column(rows: &[SweepRow], get: impl Fn(&SweepRow) -> Option<f64>) -> Result<Vec<(f64, f64)>, String> {
    let missing: Vec<String> = rows.iter().filter(|r| get(r).is_none()).map(|r| r.parameter.to_string()).collect();
    if !missing.is_empty() {
        return Err(format!("missing at parameter {}", missing.join(", ")));
    }
    Ok(rows.iter().map(|r| (r.parameter, get(r).unwrap_or(f64::NAN))).collect())
}

fn ceiling(name: &str, rows: &[SweepRow], limit: f64, get: impl Fn(&SweepRow) -> Option<f64>) -> AssertionOutcome {
    match column(rows, get) {
        Err(e) => outcome(name, false, e),
        Ok(vals) => {
            let (at, worst) = vals.iter().copied().fold((f64::NAN, f64::NEG_INFINITY), |a, b| if b.1 > a.1 { b } else { a });
            outcome(name, worst <= limit, format!("max {worst:.6e} at parameter {at} against {limit}"))
        }
    }
}

fn spread(name: &str, rows: &[SweepRow], factor: f64, get: impl Fn(&SweepRow) -> Option<f64>) -> AssertionOutcome {
    match column(rows, get) {
        Err(e) => outcome(name, false, e),
        Ok(vals) => {
            let hi = vals.iter().map(|v| v.1).fold(f64::NEG_INFINITY, f64::max);
            let lo = vals.iter().map(|v| v.1).fold(f64::INFINITY, f64::min);
            outcome(
                name,
                lo > 0.0 && hi <= factor * lo,
                format!("max {hi:.6e}, min {lo:.6e}, ratio {:.4} against {factor}", hi / lo),
            )
        }
    }
}

/// `τ^{1/2} ln^{1/4}(1/τ)`.
fn levy_scale(tau: f64) -> f64 {
    tau.sqrt() * (1.0 / tau).ln().powf(0.25)
}

pub fn evaluate(a: &Assertions, rows: &[SweepRow]) -> Vec<AssertionOutcome> {
    let mut out = Vec::new();
    if rows.is_empty() {
        out.push(outcome("rows_present", false, "no rows".into()));
        return out;
    }
    if a.rows_complete {
        let failed: Vec<String> =
            rows.iter().filter(|r| r.error.is_some()).map(|r| r.parameter.to_string()).collect();
        let detail = if failed.is_empty() {
            "all rows computed".to_string()
        } else {
            format!("errors at parameter {}", failed.join(", "))
        };
        out.push(outcome("rows_complete", failed.is_empty(), detail));
    }
    if let Some(c) = a.max_wpsi {
        out.push(ceiling("max_wpsi", rows, c, |r| r.wpsi));
    }
    if let (Some(factor), Some(reference)) = (a.wpsi_growth_factor, a.wpsi_growth_reference) {
        out.push(match column(rows, |r| r.wpsi) {
            Err(e) => outcome("wpsi_growth", false, e),
            Ok(vals) => {
                let all = vals.iter().map(|v| v.1).fold(f64::NEG_INFINITY, f64::max);
                let early = vals.iter().filter(|v| v.0 <= reference).map(|v| v.1).fold(f64::NEG_INFINITY, f64::max);
                if early == f64::NEG_INFINITY {
                    outcome("wpsi_growth", false, format!("no rows with parameter <= {reference}"))
                } else {
                    outcome(
                        "wpsi_growth",
                        all <= factor * early,
                        format!("max {all:.6e} against {factor} x {early:.6e} (parameter <= {reference})"),
                    )
                }
            }
        });
    }
    if let Some(k) = a.wpsi_sqrt_n_spread {
        out.push(spread("wpsi_sqrt_n_spread", rows, k, |r| r.wpsi.map(|w| w * r.parameter.sqrt())));
    }
    if let Some(c) = a.max_w1_over_tau {
        out.push(ceiling("max_w1_over_tau", rows, c, |r| r.w1_over_tau));
    }
    if let Some(c) = a.max_rho_sigma_over_tau {
        out.push(ceiling("max_rho_sigma_over_tau", rows, c, |r| r.rho_sigma_over_tau));
    }
    if a.smoothing_bounds_rho {
        out.push(match column(rows, |r| r.smoothing_bound.zip(r.rho).map(|(s, rho)| s - rho)) {
            Err(e) => outcome("smoothing_bounds_rho", false, e),
            Ok(gaps) => {
                let worst = gaps.iter().map(|g| g.1).fold(f64::INFINITY, f64::min);
                outcome("smoothing_bounds_rho", worst >= 0.0, format!("smallest bound - rho {worst:.6e}"))
            }
        });
    }
    if a.tail_bound {
        out.push(ceiling("tail_bound", rows, 1.0 + BAND_SLACK, |r| r.tail_multiplier));
    }
    if let Some(k) = a.band_spread {
        out.push(spread("c7_spread", rows, k, |r| r.c7));
        out.push(spread("c11_spread", rows, k, |r| r.c11(a.band_c10)));
    }
    if let Some(c) = a.max_c7 {
        out.push(ceiling("max_c7", rows, c, |r| r.c7));
    }
    if let Some(c) = a.max_c11 {
        out.push(ceiling("max_c11", rows, c, |r| r.c11(a.band_c10)));
    }
    if let Some(c) = a.levy_constant {
        // the scale vanishes at τ = 1 and is undefined above it
        let eligible: Vec<SweepRow> = rows.iter().filter(|r| r.tau.is_some_and(|t| t < 1.0)).cloned().collect();
        out.push(if eligible.is_empty() {
            outcome("levy_constant", false, "no rows with tau < 1".into())
        } else {
            let mut o = ceiling("levy_constant", &eligible, c, |r| r.levy.zip(r.tau).map(|(l, t)| l / levy_scale(t)));
            o.detail.push_str(&format!(" over {} rows with tau < 1", eligible.len()));
            o
        });
    }
    out
}
