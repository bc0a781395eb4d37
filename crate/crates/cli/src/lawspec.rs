//! Law specifications on the command line.
//!
//! ```text
//! poisson:4            binomial:100,0.3      bernoulli:0.2
//! rademacher           rademacher_sum:10     gaussian:0,2   (mean, variance)
//! file:law.txt         law.txt               (x mass per line)
//! ```
//!
//! Suffixes `@center` and `@std` center or standardize a lattice law, e.g.
//! `poisson:4@center`. In second position, `companion` names the Gaussian
//! law with the mean and variance of the first.

use clt_transport::dist::{self, spec_file, LogLattice};
use clt_transport::{GaussianLaw, LatticeDistribution, Law};

use crate::error::{CliError, Result};

fn bad(spec: &str, message: impl Into<String>) -> CliError {
    CliError::LawSpec { spec: spec.to_string(), message: message.into() }
}

fn numbers(spec: &str, args: Option<&str>, count: usize) -> Result<Vec<f64>> {
    let args = args.ok_or_else(|| bad(spec, format!("expected {count} argument(s) after ':'")))?;
    let vals = args
        .split(',')
        .map(|s| s.trim().parse::<f64>().map_err(|e| bad(spec, format!("`{s}`: {e}"))))
        .collect::<Result<Vec<f64>>>()?;
    if vals.len() != count {
        return Err(bad(spec, format!("expected {count} argument(s), got {}", vals.len())));
    }
    Ok(vals)
}

fn count(spec: &str, v: f64) -> Result<u64> {
    if v >= 1.0 && v.fract() == 0.0 {
        Ok(v as u64)
    } else {
        Err(bad(spec, format!("expected a positive integer, got {v}")))
    }
}

fn base_law(spec: &str, body: &str) -> Result<Law> {
    let (name, args) = match body.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (body, None),
    };
    let lattice = |d: LatticeDistribution| Ok(Law::Lattice(d));
    match name {
        "poisson" => lattice(dist::poisson(numbers(spec, args, 1)?[0])?),
        "binomial" => {
            let v = numbers(spec, args, 2)?;
            lattice(dist::binomial(count(spec, v[0])?, v[1])?)
        }
        "bernoulli" => lattice(dist::bernoulli(numbers(spec, args, 1)?[0])?),
        "rademacher" if args.is_none() => lattice(dist::rademacher()),
        "rademacher_sum" => lattice(dist::rademacher_sum(count(spec, numbers(spec, args, 1)?[0])?)?),
        "gaussian" => {
            let v = numbers(spec, args, 2)?;
            Ok(Law::Gaussian(GaussianLaw::new(v[0], v[1])?))
        }
        "file" => lattice(spec_file::read(args.ok_or_else(|| bad(spec, "missing path"))?)?),
        _ if std::path::Path::new(body).is_file() => lattice(spec_file::read(body)?),
        _ => Err(bad(spec, "unknown family and not a readable file")),
    }
}

/// Parses one law specification.
pub fn parse_law(spec: &str) -> Result<Law> {
    let mut parts = spec.split('@');
    let body = parts.next().unwrap_or_default();
    let mut law = base_law(spec, body)?;
    for modifier in parts {
        let Law::Lattice(d) = &law else {
            return Err(bad(spec, format!("`@{modifier}` applies to lattice laws only")));
        };
        law = match modifier {
            "center" => Law::Lattice(d.centered()),
            "std" => Law::Lattice(d.standardized()?),
            _ => return Err(bad(spec, format!("unknown modifier `@{modifier}`"))),
        };
    }
    Ok(law)
}

/// Parses the second law of a pair, accepting `companion`.
pub fn parse_partner(spec: &str, first: &Law) -> Result<Law> {
    if spec == "companion" {
        Ok(Law::Gaussian(first.gaussian_companion()?))
    } else {
        parse_law(spec)
    }
}

/// Lattice law or an error naming the spec.
pub fn parse_lattice(spec: &str) -> Result<LatticeDistribution> {
    match parse_law(spec)? {
        Law::Lattice(d) => Ok(d),
        Law::Gaussian(_) => Err(bad(spec, "a lattice law is required")),
    }
}

/// Log-mass form of a closed-form lattice spec, keeping atoms whose mass
/// underflows. `None` for Gaussian and file laws.
pub fn parse_log_lattice(spec: &str) -> Result<Option<LogLattice>> {
    let mut parts = spec.split('@');
    let body = parts.next().unwrap_or_default();
    let (name, args) = match body.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (body, None),
    };
    let mut d = match name {
        "poisson" => dist::poisson_log(numbers(spec, args, 1)?[0])?,
        "binomial" => {
            let v = numbers(spec, args, 2)?;
            dist::binomial_log(count(spec, v[0])?, v[1])?
        }
        "bernoulli" => dist::binomial_log(1, numbers(spec, args, 1)?[0])?,
        "rademacher" if args.is_none() => dist::rademacher_sum_log(1)?,
        "rademacher_sum" => dist::rademacher_sum_log(count(spec, numbers(spec, args, 1)?[0])?)?,
        _ => return Ok(None),
    };
    for modifier in parts {
        d = match modifier {
            "center" => d.centered(),
            "std" => d.standardized()?,
            _ => return Err(bad(spec, format!("unknown modifier `@{modifier}`"))),
        };
    }
    Ok(Some(d))
}
