//! Construction of the centered (optionally standardized) law of one family
//! instance, with the almost-sure summand bound where the family has one.

use clt_transport::dist::{self, spec_file, LogLattice};
use clt_transport::{Distribution1d, LatticeDistribution};
use serde::{Deserialize, Serialize};

use crate::config::{FamilyConfig, FamilyKind};
use crate::error::{CliError, Result};

/// Which τ the ratio columns divide by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TauKind {
    /// Bound on one centered summand divided by the normalization.
    AsBound,
    /// Statulevičius τ of the whole law.
    Statulevicius,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    pub law: LatticeDistribution,
    /// The same law with log masses. Closed-form families keep every atom
    /// here, which exponential transport costs need; file-based families
    /// carry the atoms of `law`.
    pub log_law: LogLattice,
    /// Almost-sure bound of one centered summand, in the units of `law`.
    pub tau_as: Option<f64>,
}

/// Law read from the family's file, if it has one. Loaded once per sweep.
pub fn load_base(family: &FamilyConfig) -> Result<Option<LatticeDistribution>> {
    match &family.kind {
        FamilyKind::BoundedIid { file } | FamilyKind::Custom { file } => {
            let d = spec_file::read(file)?;
            if !(d.variance() > 0.0) {
                return Err(CliError::Config(format!("{}: law is degenerate", file.display())));
            }
            Ok(Some(d))
        }
        _ => Ok(None),
    }
}

fn count(param: f64) -> Result<u64> {
    if param >= 1.0 && param.fract() == 0.0 && param <= u32::MAX as f64 {
        Ok(param as u64)
    } else {
        Err(CliError::Config(format!("expected a positive integer n, got {param}")))
    }
}

/// Largest `|x - E X|` over the support.
fn radius(d: &LatticeDistribution) -> f64 {
    let mean = d.mean();
    (d.max_point() - mean).max(mean - d.min_point())
}

/// Builds the instance at grid value `param`. `base` is the output of
/// [`load_base`].
pub fn build(family: &FamilyConfig, base: Option<&LatticeDistribution>, param: f64) -> Result<Instance> {
    let need_base = || base.ok_or_else(|| CliError::Config("family file was not loaded".into()));
    let (raw, log_raw, summand_bound) = match &family.kind {
        FamilyKind::Binomial { p } => {
            let n = count(param)?;
            (dist::binomial(n, *p)?, Some(dist::binomial_log(n, *p)?), Some(p.max(1.0 - p)))
        }
        FamilyKind::Poisson => (dist::poisson(param)?, Some(dist::poisson_log(param)?), None),
        FamilyKind::RademacherSum => {
            let n = count(param)?;
            (dist::rademacher_sum(n)?, Some(dist::rademacher_sum_log(n)?), Some(1.0))
        }
        FamilyKind::BoundedIid { .. } => {
            let b = need_base()?;
            let n = count(param)? as usize;
            (b.power_convolve(n)?, None, Some(radius(b)))
        }
        FamilyKind::Custom { .. } => {
            let n = count(param)? as usize;
            (need_base()?.power_convolve(n)?, None, None)
        }
    };
    let log_raw = match log_raw {
        Some(l) => l,
        None => LogLattice::from_lattice(&raw)?,
    };
    let centered = raw.centered();
    if !family.normalize {
        return Ok(Instance { law: centered, log_law: log_raw.centered(), tau_as: summand_bound });
    }
    let sd = centered.variance().sqrt();
    Ok(Instance {
        law: centered.standardized()?,
        log_law: log_raw.standardized()?,
        tau_as: summand_bound.map(|t| t / sd),
    })
}
