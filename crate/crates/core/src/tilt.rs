//! Cramér (Esscher) transforms of lattice laws.
//!
//! The tilted law `F̄(h)` reweights each atom by `e^{h x}` and renormalizes
//! by `e^{φ(h)}`. Its mean is `φ'(h)` and its variance `φ''(h)`, so the map
//! `h -> φ'(h)` is strictly increasing and can be inverted by a safeguarded
//! Newton iteration.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::cumulants::statulevicius_tau;
use crate::dist::{require_centered, Distribution1d, LatticeDistribution};
use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;

/// Constant of the guaranteed solvability domain `|x| <= σ² / (4.8 τ)`.
pub const GUARANTEED_DOMAIN_FACTOR: f64 = 4.8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TiltedLaw {
    pub base: LatticeDistribution,
    pub h: f64,
    /// `φ(h) = ln E e^{h ξ}`.
    pub log_normalizer: f64,
    pub tilted: LatticeDistribution,
}

/// Normalized tilted masses and `φ(h)`.
fn tilt_weights(d: &LatticeDistribution, h: f64) -> (Vec<f64>, f64) {
    let shift = d
        .support()
        .iter()
        .map(|&x| h * x)
        .fold(f64::NEG_INFINITY, f64::max);
    let w: Vec<f64> = d
        .support()
        .iter()
        .zip(d.masses())
        .map(|(&x, &m)| m * (h * x - shift).exp())
        .collect();
    let total: f64 = w.iter().copied().collect::<CompensatedSum>().value();
    let log_norm = shift + total.ln();
    (w.into_iter().map(|v| v / total).collect(), log_norm)
}

/// Reweights `d` by `e^{h x}`. The support is kept, except for atoms whose
/// tilted mass underflows to zero.
pub fn esscher_transform(d: &LatticeDistribution, h: f64) -> Result<TiltedLaw> {
    if !h.is_finite() {
        return Err(Error::NonFinite("tilt parameter"));
    }
    if h == 0.0 {
        return Ok(TiltedLaw {
            base: d.clone(),
            h,
            log_normalizer: 0.0,
            tilted: d.clone(),
        });
    }
    let (w, log_normalizer) = tilt_weights(d, h);
    let tilted = LatticeDistribution::with_tolerance(d.support().to_vec(), w, 0.0)?;
    Ok(TiltedLaw {
        base: d.clone(),
        h,
        log_normalizer,
        tilted,
    })
}

/// Mean and variance of the tilted law, i.e. `φ'(h)` and `φ''(h)`.
fn tilted_mean_var(d: &LatticeDistribution, h: f64) -> (f64, f64) {
    let (w, _) = tilt_weights(d, h);
    let mean: f64 = w
        .iter()
        .zip(d.support())
        .map(|(p, x)| p * x)
        .collect::<CompensatedSum>()
        .value();
    let var: f64 = w
        .iter()
        .zip(d.support())
        .map(|(p, x)| {
            let y = x - mean;
            p * y * y
        })
        .collect::<CompensatedSum>()
        .value();
    (mean, var)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TiltSolution {
    pub h: f64,
    pub achieved_mean: f64,
    pub iterations: usize,
    /// Statulevičius τ of the base law, used to seed the bracket.
    pub tau_hat: f64,
    /// Whether `|x| <= σ² / (4.8 τ̂)`; outside this set a solution still
    /// exists but is not covered by the small-tilt estimates.
    pub in_guaranteed_domain: bool,
}

/// Solves `E ξ̄(h) = x` for a centered law and a target inside the open
/// convex hull of the support.
pub fn solve_tilt(d: &LatticeDistribution, x: f64) -> Result<TiltSolution> {
    require_centered(d)?;
    let var = d.variance();
    if !(var > 0.0) {
        return Err(Error::Degenerate);
    }
    let (lo_pt, hi_pt) = (d.min_point(), d.max_point());
    if !(x > lo_pt && x < hi_pt) {
        return Err(Error::TargetOutsideHull {
            target: x,
            lo: lo_pt,
            hi: hi_pt,
        });
    }
    let sd = var.sqrt();
    let tau_hat = match statulevicius_tau(d, 8) {
        Ok(c) if c.tau_estimate > 0.0 => c.tau_estimate,
        _ => sd,
    };
    let in_guaranteed_domain = x.abs() * GUARANTEED_DOMAIN_FACTOR * tau_hat <= var;
    let report = |h: f64, achieved_mean: f64, iterations: usize| TiltSolution {
        h,
        achieved_mean,
        iterations,
        tau_hat,
        in_guaranteed_domain,
    };
    if x == 0.0 {
        return Ok(report(0.0, d.mean(), 0));
    }

    let g = |h: f64| tilted_mean_var(d, h);
    let mut lo = -1.0 / tau_hat;
    let mut hi = 1.0 / tau_hat;
    while g(lo).0 >= x {
        lo *= 2.0;
        if !lo.is_finite() || lo < -1e300 {
            return Err(Error::NoConvergence(format!(
                "no lower tilt bracket for target {x}"
            )));
        }
    }
    while g(hi).0 <= x {
        hi *= 2.0;
        if !hi.is_finite() || hi > 1e300 {
            return Err(Error::NoConvergence(format!(
                "no upper tilt bracket for target {x}"
            )));
        }
    }

    let tol = 1e-13 * sd;
    let mut h = (x / var).clamp(lo, hi);
    for iter in 1..=300 {
        let (mean, v) = g(h);
        let r = mean - x;
        if r.abs() <= tol {
            return Ok(report(h, mean, iter));
        }
        if r > 0.0 {
            hi = h;
        } else {
            lo = h;
        }
        let newton = h - r / v;
        let next = if v > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if next == h || hi - lo <= 4.0 * f64::EPSILON * h.abs().max(f64::MIN_POSITIVE) {
            return Ok(report(h, mean, iter));
        }
        h = next;
    }
    Err(Error::NoConvergence(format!("tilt solve for target {x}")))
}

/// Numerical check of the small-tilt relations at one `h`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TiltDiagnostics {
    pub h: f64,
    pub tau: f64,
    /// `Var ξ̄(h) / Var ξ`.
    pub variance_ratio: f64,
    /// `[1 - |h| τ, 1 + |h| τ]`.
    pub variance_band: (f64, f64),
    pub variance_in_band: bool,
    /// `θ` with `Var ξ̄(h) = Var ξ (1 + θ |h| τ)`.
    pub theta_variance: f64,
    /// `θ` with `φ(h) = σ² h² (1 + θ |h| τ / 3) / 2`.
    pub theta6: f64,
    /// `|θ|` with `ln E e^{i h ξ} = -σ² h² (1 + θ |h| τ / 3) / 2` (θ complex).
    pub theta5: f64,
    pub theta6_ok: bool,
    pub theta5_ok: bool,
}

pub fn tilt_diagnostics(d: &LatticeDistribution, tau: f64, h: f64) -> Result<TiltDiagnostics> {
    if !(tau > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tau must be positive, got {tau}"
        )));
    }
    let ht = h.abs() * tau;
    if !(ht < 1.0) {
        return Err(Error::TiltOutsideDisk(ht));
    }
    require_centered(d)?;
    let var = d.variance();
    if !(var > 0.0) {
        return Err(Error::Degenerate);
    }
    let band = (1.0 - ht, 1.0 + ht);
    if h == 0.0 {
        return Ok(TiltDiagnostics {
            h,
            tau,
            variance_ratio: 1.0,
            variance_band: band,
            variance_in_band: true,
            theta_variance: 0.0,
            theta6: 0.0,
            theta5: 0.0,
            theta6_ok: true,
            theta5_ok: true,
        });
    }
    let (_, tilted_var) = tilted_mean_var(d, h);
    let variance_ratio = tilted_var / var;
    let quad = var * h * h;
    let phi = d.cgf(Complex64::new(h, 0.0)).re;
    let theta6 = (2.0 * phi / quad - 1.0) * 3.0 / ht;
    let psi = d.cgf(Complex64::new(0.0, h));
    let theta5 = ((psi * (-2.0 / quad)) - 1.0).norm() * 3.0 / ht;
    let theta_variance = (variance_ratio - 1.0) / ht;
    Ok(TiltDiagnostics {
        h,
        tau,
        variance_ratio,
        variance_band: band,
        variance_in_band: variance_ratio >= band.0 && variance_ratio <= band.1,
        theta_variance,
        theta6,
        theta5,
        theta6_ok: theta6.abs() <= 1.0,
        theta5_ok: theta5 <= 1.0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{poisson, rademacher};

    #[test]
    fn identity_tilt() {
        let d = poisson(2.0).unwrap();
        let t = esscher_transform(&d, 0.0).unwrap();
        assert_eq!(t.tilted, d);
        assert_eq!(t.log_normalizer, 0.0);
    }

    #[test]
    fn rademacher_tilt_masses() {
        let t = esscher_transform(&rademacher(), 1.0).unwrap();
        let e = 1f64.exp();
        let want = [1.0 / e / (e + 1.0 / e), e / (e + 1.0 / e)];
        for (m, w) in t.tilted.masses().iter().zip(want) {
            assert!((m - w).abs() < 1e-15);
        }
        assert!((t.log_normalizer - 1f64.cosh().ln()).abs() < 1e-15);
    }

    #[test]
    fn poisson_tilt_is_poisson() {
        let h = 1.5f64.ln();
        let t = esscher_transform(&poisson(4.0).unwrap(), h).unwrap();
        let target = poisson(6.0).unwrap();
        assert!(t.tilted.tv_distance(&target) < 1e-10);
        assert!((t.log_normalizer - 4.0 * (h.exp() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn solve_closed_forms() {
        let p = poisson(4.0).unwrap().centered();
        let s = solve_tilt(&p, 2.0).unwrap();
        assert!((s.h - 1.5f64.ln()).abs() < 1e-9, "{s:?}");
        let s = solve_tilt(&rademacher(), 0.8).unwrap();
        assert!((s.h - 0.8f64.atanh()).abs() < 1e-12);
        assert_eq!(solve_tilt(&rademacher(), 0.0).unwrap().h, 0.0);
        assert!(matches!(
            solve_tilt(&rademacher(), 1.0),
            Err(Error::TargetOutsideHull { .. })
        ));
    }

    #[test]
    fn solve_far_into_the_tail() {
        let s = solve_tilt(&rademacher(), 1.0 - 1e-12).unwrap();
        assert!((s.achieved_mean - (1.0 - 1e-12)).abs() <= 1e-13);
        assert!(!s.in_guaranteed_domain);
    }

    #[test]
    fn diagnostics_examples() {
        let r = tilt_diagnostics(&rademacher(), 1.0, 0.3).unwrap();
        let want = 1.0 - 0.3f64.tanh().powi(2);
        assert!((r.variance_ratio - want).abs() < 1e-14);
        assert!(r.variance_in_band);

        let p = poisson(9.0).unwrap().centered();
        let r = tilt_diagnostics(&p, 1.0 / 3.0, 0.5).unwrap();
        assert!((r.variance_ratio - 0.5f64.exp()).abs() < 1e-10);
        assert!(!r.variance_in_band);

        let z = tilt_diagnostics(&rademacher(), 1.0, 0.0).unwrap();
        assert_eq!((z.variance_ratio, z.theta6, z.theta5), (1.0, 0.0, 0.0));
        assert!(matches!(
            tilt_diagnostics(&rademacher(), 2.0, 0.5),
            Err(Error::TiltOutsideDisk(_))
        ));
    }
}
