use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numeric::{integrate, QuadratureConfig};
use crate::special::{std_normal_interval, std_normal_log_interval, std_normal_pdf};

/// Beyond this standard-variable magnitude the Gaussian weight underflows
/// for any polynomial cost of moderate size.
pub(crate) const Z_CUTOFF: f64 = 40.0;

/// Orlicz function `ψ`: convex, nondecreasing on `[0, ∞)`, `ψ(0) = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OrliczCost {
    /// `e^t - 1`.
    ExpMinusOne,
    /// `t^p`, `p >= 1`.
    Power { p: f64 },
    /// `t`.
    Absolute,
}

impl OrliczCost {
    pub fn power(p: f64) -> Result<Self> {
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::InvalidArgument(format!("power cost needs p >= 1, got {p}")));
        }
        Ok(if p == 1.0 { OrliczCost::Absolute } else { OrliczCost::Power { p } })
    }

    pub fn eval(&self, t: f64) -> f64 {
        match *self {
            OrliczCost::ExpMinusOne => t.exp_m1(),
            OrliczCost::Power { p } => t.powf(p),
            OrliczCost::Absolute => t,
        }
    }

    /// Exponent `p` when `ψ(t) = t^p`, so that `W_ψ` is an `L^p` norm.
    pub fn homogeneity(&self) -> Option<f64> {
        match *self {
            OrliczCost::ExpMinusOne => None,
            OrliczCost::Power { p } => Some(p),
            OrliczCost::Absolute => Some(1.0),
        }
    }

    /// Checks `ψ(0) = 0`, monotonicity and midpoint convexity on a grid.
    pub fn validate(&self) -> Result<()> {
        if let OrliczCost::Power { p } = *self {
            if !(p >= 1.0 && p.is_finite()) {
                return Err(Error::InvalidArgument(format!("power cost needs p >= 1, got {p}")));
            }
        }
        if self.eval(0.0) != 0.0 {
            return Err(Error::InvalidArgument("cost must vanish at 0".into()));
        }
        let grid: Vec<f64> = (0..=200).map(|k| 0.05 * k as f64).collect();
        for w in grid.windows(3) {
            let (a, b, c) = (self.eval(w[0]), self.eval(w[1]), self.eval(w[2]));
            if b < a || a + c - 2.0 * b < -1e-12 * c.abs().max(1.0) {
                return Err(Error::InvalidArgument(format!("cost is not convex nondecreasing near {}", w[1])));
            }
        }
        Ok(())
    }
}

/// `∫_l^r e^{c z} φ(z) dz` as a logarithm.
fn log_shifted_mgf(c: f64, l: f64, r: f64) -> f64 {
    0.5 * c * c + std_normal_log_interval(l - c, r - c)
}

/// Sub-intervals of `[l, r]` on which `alpha + beta z` has constant sign,
/// with that sign.
fn sign_split(alpha: f64, beta: f64, l: f64, r: f64) -> Vec<(f64, f64, f64)> {
    if beta == 0.0 {
        return vec![(l, r, if alpha >= 0.0 { 1.0 } else { -1.0 })];
    }
    let root = -alpha / beta;
    let right_sign = if beta > 0.0 { 1.0 } else { -1.0 };
    if root <= l {
        vec![(l, r, right_sign)]
    } else if root >= r {
        vec![(l, r, -right_sign)]
    } else {
        vec![(l, root, -right_sign), (root, r, right_sign)]
    }
}

/// `∫_l^r ψ(|alpha + beta z| / a) φ(z) dz` with its error estimate.
pub(crate) fn affine_piece(
    cost: OrliczCost,
    alpha: f64,
    beta: f64,
    l: f64,
    r: f64,
    a: f64,
) -> Result<(f64, f64)> {
    match cost {
        OrliczCost::ExpMinusOne => {
            let mut total = 0.0;
            for (lo, hi, s) in sign_split(alpha, beta, l, r) {
                let c = s * beta / a;
                let log_e = s * alpha / a + log_shifted_mgf(c, lo, hi);
                if log_e > 709.0 {
                    return Ok((f64::INFINITY, 0.0));
                }
                total += log_e.exp() - std_normal_interval(lo, hi);
            }
            Ok((total.max(0.0), 0.0))
        }
        OrliczCost::Absolute => {
            let mut total = 0.0;
            for (lo, hi, s) in sign_split(alpha, beta, l, r) {
                let pdf = |z: f64| if z.is_infinite() { 0.0 } else { std_normal_pdf(z) };
                total += s * (alpha * std_normal_interval(lo, hi) + beta * (pdf(lo) - pdf(hi)));
            }
            Ok((total.max(0.0) / a, 0.0))
        }
        OrliczCost::Power { p } => power_piece(alpha, beta, l, r, p).map(|(v, e)| {
            let scale = a.powf(-p);
            (v * scale, e * scale)
        }),
    }
}

/// `∫_l^r |alpha + beta z|^p φ(z) dz` by adaptive Gauss–Kronrod on the
/// range clipped to `|z| <= Z_CUTOFF`.
pub(crate) fn power_piece(alpha: f64, beta: f64, l: f64, r: f64, p: f64) -> Result<(f64, f64)> {
    let lo = l.max(-Z_CUTOFF);
    let hi = r.min(Z_CUTOFF);
    if !(lo < hi) {
        return Ok((0.0, 0.0));
    }
    let mass = std_normal_interval(lo, hi);
    if mass == 0.0 {
        return Ok((0.0, 0.0));
    }
    let mut breaks = vec![-20.0, -10.0, -6.0, -3.0, -1.0, 0.0, 1.0, 3.0, 6.0, 10.0, 20.0];
    if beta != 0.0 {
        breaks.push(-alpha / beta);
    }
    let reach = alpha.abs() + beta.abs() * lo.abs().max(hi.abs()).max(1.0);
    let cfg = QuadratureConfig {
        abs_tol: 1e-14 * mass * reach.powf(p),
        rel_tol: 1e-12,
        max_subdivisions: 4000,
    };
    let q = integrate(|z| (alpha + beta * z).abs().powf(p) * std_normal_pdf(z), lo, hi, &breaks, cfg)?;
    Ok((q.value, q.error))
}
