//! Cumulants of lattice laws and certificates for the cumulant-growth
//! classes: Statulevičius (`|γ_m| <= m! τ^{m-2} γ_2 / 2`), the
//! one-dimensional Bernstein moment condition, Sakhanenko's condition
//! `E|ξ|³ e^{|ξ|/τ} <= τ E ξ²`, and a sampled check of the analytic class
//! `|φ'''(z)| <= τ σ²` on the disk `|z| τ < 1`.
//!
//! Each certifier reports its own minimal τ. No conversion between classes
//! is attempted.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dist::{require_centered, Distribution1d, LatticeDistribution};
use crate::error::{Error, Result};
use crate::numeric::{brent, CompensatedSum};

/// Highest cumulant order computed from moments.
pub const CUMULANT_ORDER_CAP: usize = 16;
/// Orders whose cancellation diagnostic exceeds this are flagged unreliable.
pub const UNRELIABLE_CONDITION: f64 = 1e12;

/// Cumulants `γ_1..γ_M` with a per-order cancellation diagnostic: the
/// magnitude of the terms entering the recursion (absolute central moments
/// included) over the magnitude of the result.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cumulants {
    pub values: Vec<f64>,
    pub condition: Vec<f64>,
}

impl Cumulants {
    /// `γ_m`, 1-based.
    pub fn order(&self, m: usize) -> f64 {
        self.values[m - 1]
    }

    pub fn reliable(&self, m: usize) -> bool {
        self.condition[m - 1] <= UNRELIABLE_CONDITION
    }
}

/// Cumulants from central moments by
/// `γ_m = μ_m - Σ_{k=1}^{m-1} C(m-1, k-1) γ_k μ_{m-k}`, with `γ_1` the mean.
pub fn cumulants_upto(d: &LatticeDistribution, m: usize) -> Result<Cumulants> {
    if m > CUMULANT_ORDER_CAP {
        return Err(Error::OrderAboveCap {
            order: m,
            cap: CUMULANT_ORDER_CAP,
        });
    }
    if m == 0 {
        return Err(Error::InvalidArgument(
            "cumulant order must be at least 1".into(),
        ));
    }
    let mu = d.central_moments(m);
    let nu = d.absolute_central_moments(m);
    let binom = binomial_table(m);
    let mut gamma = vec![0.0; m];
    // rounding-error scale of each cumulant: absolute moments propagated
    // through the recursion
    let mut scale = nu.clone();
    let mut condition = vec![1.0; m];
    for order in 2..=m {
        let mut acc = CompensatedSum::new();
        let mut s = nu[order - 1];
        acc.add(mu[order - 1]);
        for k in 2..order - 1 {
            let c = binom[order - 1][k - 1];
            acc.add(-c * gamma[k - 1] * mu[order - k - 1]);
            s += c * scale[k - 1] * nu[order - k - 1];
        }
        let g = acc.value();
        gamma[order - 1] = g;
        scale[order - 1] = s;
        condition[order - 1] = if s == 0.0 {
            1.0
        } else if g == 0.0 {
            f64::MAX
        } else {
            (s / g.abs()).max(1.0)
        };
    }
    gamma[0] = d.mean();
    Ok(Cumulants {
        values: gamma,
        condition,
    })
}

fn binomial_table(m: usize) -> Vec<Vec<f64>> {
    let mut t = vec![vec![1.0; m + 1]; m + 1];
    for n in 1..=m {
        for k in 1..n {
            t[n][k] = t[n - 1][k - 1] + t[n - 1][k];
        }
    }
    t
}

fn factorial(m: usize) -> f64 {
    (1..=m).map(|k| k as f64).product()
}

/// Smallest τ with `|c| <= m! τ^{m-2} s / 2`.
fn order_tau(c: f64, s: f64, m: usize) -> f64 {
    (2.0 * c.abs() / (factorial(m) * s)).powf(1.0 / (m as f64 - 2.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassName {
    Statulevicius,
    #[serde(rename = "bernstein1d")]
    Bernstein1d,
    Sakhanenko,
    A1Grid,
}

/// Minimal τ imposed by a single order.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderConstraint {
    pub order: usize,
    pub tau: f64,
    pub reliable: bool,
    pub condition: f64,
}

/// Sampling parameters of [`a1_grid_check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct A1GridParams {
    pub radial_fracs: Vec<f64>,
    pub angular_count: usize,
    pub cauchy_nodes: usize,
    /// Largest cancellation factor `Σ|m_i e^{z x_i}| / |Σ m_i e^{z x_i}|` met.
    pub max_cancellation: f64,
    /// Radius on which the moment generating function was checked to have
    /// no zeros inside.
    pub zero_free_radius: f64,
}

impl Default for A1GridParams {
    fn default() -> Self {
        Self {
            radial_fracs: vec![0.25, 0.5, 0.75, 0.99],
            angular_count: 64,
            cauchy_nodes: 256,
            max_cancellation: 1.0,
            zero_free_radius: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassCertificate {
    pub class_name: ClassName,
    pub order_constraints: Vec<OrderConstraint>,
    /// Maximum over reliable orders, or the smallest τ consistent with the
    /// sampled grid for the analytic class.
    pub tau_estimate: f64,
    pub max_order: usize,
    pub holds_at: Option<f64>,
    pub holds: Option<bool>,
    pub max_ratio: Option<f64>,
    pub grid: Option<A1GridParams>,
}

impl ClassCertificate {
    pub fn binding_order(&self) -> Option<usize> {
        self.order_constraints
            .iter()
            .filter(|c| c.reliable)
            .max_by(|a, b| a.tau.total_cmp(&b.tau))
            .map(|c| c.order)
    }

    fn from_orders(
        class_name: ClassName,
        order_constraints: Vec<OrderConstraint>,
        max_order: usize,
    ) -> Self {
        let tau_estimate = order_constraints
            .iter()
            .filter(|c| c.reliable)
            .map(|c| c.tau)
            .fold(0.0, f64::max);
        Self {
            class_name,
            order_constraints,
            tau_estimate,
            max_order,
            holds_at: None,
            holds: None,
            max_ratio: None,
            grid: None,
        }
    }

    /// Records whether the certificate holds at a user-supplied τ.
    pub fn at(mut self, tau: f64) -> Self {
        self.holds_at = Some(tau);
        self.holds = Some(self.tau_estimate <= tau);
        self
    }
}

fn check_order(m: usize) -> Result<()> {
    if m < 3 {
        return Err(Error::InvalidArgument(
            "certificates need order M >= 3".into(),
        ));
    }
    if m > CUMULANT_ORDER_CAP {
        return Err(Error::OrderAboveCap {
            order: m,
            cap: CUMULANT_ORDER_CAP,
        });
    }
    Ok(())
}

/// Per-order minimal τ from `|γ_m| <= m! τ^{m-2} γ_2 / 2`, m = 3..=M.
pub fn statulevicius_tau(d: &LatticeDistribution, m: usize) -> Result<ClassCertificate> {
    check_order(m)?;
    let k = cumulants_upto(d, m)?;
    let var = k.order(2);
    if !(var > 0.0) {
        return Err(Error::Degenerate);
    }
    let orders = (3..=m)
        .map(|order| OrderConstraint {
            order,
            tau: order_tau(k.order(order), var, order),
            reliable: k.reliable(order),
            condition: k.condition[order - 1],
        })
        .collect();
    Ok(ClassCertificate::from_orders(
        ClassName::Statulevicius,
        orders,
        m,
    ))
}

/// Per-order minimal τ from `|E ξ^m| <= m! τ^{m-2} E ξ² / 2` for a centered law.
pub fn bernstein_tau_1d(d: &LatticeDistribution, m: usize) -> Result<ClassCertificate> {
    check_order(m)?;
    require_centered(d)?;
    let raw = d.moments(m);
    let second = raw[1];
    if !(second > 0.0) {
        return Err(Error::Degenerate);
    }
    let orders = (3..=m)
        .map(|order| OrderConstraint {
            order,
            tau: order_tau(raw[order - 1], second, order),
            reliable: true,
            condition: 1.0,
        })
        .collect();
    Ok(ClassCertificate::from_orders(
        ClassName::Bernstein1d,
        orders,
        m,
    ))
}

/// Outcome of the Sakhanenko inequality at one τ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SakhanenkoCheck {
    pub tau: f64,
    pub holds: bool,
    /// `E|ξ|³ e^{|ξ|/τ} / (τ E ξ²)`.
    pub ratio: f64,
}

fn sakhanenko_log_ratio(d: &LatticeDistribution, tau: f64, log_second: f64) -> f64 {
    let terms: Vec<(f64, f64)> = d
        .support()
        .iter()
        .zip(d.masses())
        .filter(|(x, _)| **x != 0.0)
        .map(|(&x, &m)| (m * x.abs().powi(3), x.abs() / tau))
        .collect();
    let top = terms.iter().map(|t| t.1).fold(f64::NEG_INFINITY, f64::max);
    let s: f64 = terms
        .iter()
        .map(|&(c, e)| c * (e - top).exp())
        .collect::<CompensatedSum>()
        .value();
    top + s.ln() - tau.ln() - log_second
}

pub fn sakhanenko_holds(d: &LatticeDistribution, tau: f64) -> Result<SakhanenkoCheck> {
    if !(tau > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "tau must be positive, got {tau}"
        )));
    }
    require_centered(d)?;
    let second = d.moments(2)[1];
    if !(second > 0.0) {
        return Err(Error::Degenerate);
    }
    let ratio = sakhanenko_log_ratio(d, tau, second.ln()).exp();
    Ok(SakhanenkoCheck {
        tau,
        holds: ratio <= 1.0,
        ratio,
    })
}

/// Smallest τ satisfying Sakhanenko's condition; the ratio is strictly
/// decreasing in τ, so the root of its logarithm is unique.
pub fn sakhanenko_tau(d: &LatticeDistribution) -> Result<f64> {
    require_centered(d)?;
    let second = d.moments(2)[1];
    if !(second > 0.0) {
        return Err(Error::Degenerate);
    }
    let log_second = second.ln();
    let f = |t: f64| sakhanenko_log_ratio(d, t, log_second);
    let scale = d.support().iter().fold(0.0f64, |s, x| s.max(x.abs()));
    let (mut lo, mut hi) = (scale, scale);
    while f(lo) <= 0.0 {
        lo *= 0.5;
    }
    while f(hi) > 0.0 {
        hi *= 2.0;
    }
    Ok(brent(f, lo, hi, 0.0, 1e-15, 0.0, 200)?.x)
}

pub fn sakhanenko_certificate(
    d: &LatticeDistribution,
    tau: Option<f64>,
) -> Result<ClassCertificate> {
    let tau_estimate = sakhanenko_tau(d)?;
    let mut cert = ClassCertificate {
        class_name: ClassName::Sakhanenko,
        order_constraints: Vec::new(),
        tau_estimate,
        max_order: 0,
        holds_at: None,
        holds: None,
        max_ratio: None,
        grid: None,
    };
    if let Some(t) = tau {
        let check = sakhanenko_holds(d, t)?;
        cert.holds_at = Some(t);
        cert.holds = Some(check.holds);
        cert.max_ratio = Some(check.ratio);
    }
    Ok(cert)
}

fn expm1_c(z: Complex64) -> Complex64 {
    let half_sin = (0.5 * z.im).sin();
    Complex64::new(
        z.re.exp_m1() * z.im.cos() - 2.0 * half_sin * half_sin,
        z.re.exp() * z.im.sin(),
    )
}

fn ln1p_c(u: Complex64) -> Complex64 {
    Complex64::new(
        0.5 * (2.0 * u.re + u.norm_sqr()).ln_1p(),
        u.im.atan2(1.0 + u.re),
    )
}

/// Moment generating function at `z` rescaled by `e^{-Re(z) max}`, with the
/// cancellation factor `Σ|terms| / |Σ terms|`.
fn scaled_mgf(d: &LatticeDistribution, z: Complex64) -> (Complex64, f64, f64) {
    let shift = d
        .support()
        .iter()
        .map(|&x| z.re * x)
        .fold(f64::NEG_INFINITY, f64::max);
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    let mut abs = CompensatedSum::new();
    for (&x, &m) in d.support().iter().zip(d.masses()) {
        let w = m * (z.re * x - shift).exp();
        let (s, c) = (z.im * x).sin_cos();
        re.add(w * c);
        im.add(w * s);
        abs.add(w);
    }
    let v = Complex64::new(re.value(), im.value());
    (v, shift, abs.value() / v.norm())
}

/// Largest cancellation factor tolerated in the Cauchy and winding sums.
const MAX_CANCELLATION: f64 = 1e8;

/// `φ'''(z)` by the Cauchy integral over the circle `|w - z| = radius`,
/// trapezoid rule with `nodes` points. Returns the value and the largest
/// cancellation factor met at the nodes.
pub fn cauchy_third_derivative(
    d: &LatticeDistribution,
    z: Complex64,
    radius: f64,
    nodes: usize,
) -> Result<(Complex64, f64)> {
    let (m0, shift, k0) = scaled_mgf(d, z);
    if !(m0.norm() > 0.0) || k0 > MAX_CANCELLATION {
        return Err(Error::MgfCancellation { radius: z.norm() });
    }
    // tilted complex weights t_i = m_i e^{z x_i} / M(z), so that
    // φ(z + δ) - φ(z) = log(1 + Σ t_i (e^{δ x_i} - 1))
    let weights: Vec<Complex64> = d
        .support()
        .iter()
        .zip(d.masses())
        .map(|(&x, &m)| m * (z * x - shift).exp() / m0)
        .collect();
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    let mut worst = k0;
    for k in 0..nodes {
        let alpha = TAU * k as f64 / nodes as f64;
        let unit = Complex64::from_polar(1.0, alpha);
        let delta = unit * radius;
        let mut sr = CompensatedSum::new();
        let mut si = CompensatedSum::new();
        let mut sa = 0.0;
        for (t, &x) in weights.iter().zip(d.support()) {
            let v = t * expm1_c(delta * x);
            sr.add(v.re);
            si.add(v.im);
            sa += v.norm();
        }
        let u = Complex64::new(sr.value(), si.value());
        let one_plus = Complex64::new(1.0, 0.0) + u;
        if !(one_plus.norm() > 0.0) {
            return Err(Error::NonFinite("cgf"));
        }
        worst = worst.max((1.0 + sa) / one_plus.norm());
        let diff = ln1p_c(u);
        if !(diff.re.is_finite() && diff.im.is_finite()) {
            return Err(Error::NonFinite("cgf"));
        }
        let v = diff * unit.powi(-3);
        re.add(v.re);
        im.add(v.im);
    }
    if worst > MAX_CANCELLATION {
        return Err(Error::MgfCancellation {
            radius: z.norm() + radius,
        });
    }
    let mean = Complex64::new(re.value(), im.value()) / nodes as f64;
    Ok((mean * (6.0 / radius.powi(3)), worst))
}

/// Number of zeros of the moment generating function inside `|z| < radius`,
/// from its winding number around the circle.
// `nodes` grows only before the outer loop restarts.
#[allow(clippy::mut_range_bound)]
pub fn mgf_zero_count(d: &LatticeDistribution, radius: f64) -> Result<i64> {
    let mut nodes = 1024usize;
    'refine: loop {
        let mut total = 0.0;
        let mut prev: Option<f64> = None;
        for k in 0..=nodes {
            let z = Complex64::from_polar(radius, TAU * k as f64 / nodes as f64);
            let (v, _, cancel) = scaled_mgf(d, z);
            if cancel > MAX_CANCELLATION || !(v.norm() > 0.0) {
                return Err(Error::MgfCancellation { radius });
            }
            let arg = v.arg();
            if let Some(p) = prev {
                let mut step = arg - p;
                step -= TAU * (step / TAU).round();
                if step.abs() > 0.5 * PI {
                    if nodes >= 1 << 18 {
                        return Err(Error::NoConvergence("winding number of the MGF".into()));
                    }
                    nodes *= 4;
                    continue 'refine;
                }
                total += step;
            }
            prev = Some(arg);
        }
        return Ok((total / TAU).round() as i64);
    }
}

/// Sampled check of `|φ'''(z)| <= τ σ²` at `z = (r/τ) e^{iθ}`, r from
/// `radial_fracs`, θ on a uniform grid. Each `φ'''` comes from a Cauchy
/// integral on a circle of radius `min(0.005/τ, (1/τ - |z|)/2)`.
pub fn a1_grid_check(
    d: &LatticeDistribution,
    tau: f64,
    radial_fracs: &[f64],
    angular_count: usize,
) -> Result<ClassCertificate> {
    a1_grid_check_with_nodes(d, tau, radial_fracs, angular_count, 256)
}

pub fn a1_grid_check_with_nodes(
    d: &LatticeDistribution,
    tau: f64,
    radial_fracs: &[f64],
    angular_count: usize,
    cauchy_nodes: usize,
) -> Result<ClassCertificate> {
    if !(tau > 0.0 && tau.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "tau must be positive, got {tau}"
        )));
    }
    if radial_fracs.is_empty() || angular_count == 0 {
        return Err(Error::EmptyInput);
    }
    if radial_fracs.iter().any(|&r| !(0.0..1.0).contains(&r)) {
        return Err(Error::InvalidArgument(
            "radial fractions must lie in [0, 1)".into(),
        ));
    }
    if cauchy_nodes < 256 {
        return Err(Error::InvalidArgument(
            "at least 256 Cauchy nodes are required".into(),
        ));
    }
    require_centered(d)?;
    let var = d.variance();
    if !(var > 0.0) {
        return Err(Error::Degenerate);
    }
    let disk = 1.0 / tau;
    let circle = |r: f64| (0.005 * disk).min(0.5 * (disk - r * disk));
    let reach = radial_fracs
        .iter()
        .map(|&r| r * disk + circle(r))
        .fold(0.0, f64::max);
    if mgf_zero_count(d, reach)? != 0 {
        // locate the zero-free radius for the report
        let (mut lo, mut hi) = (0.0, reach);
        for _ in 0..40 {
            let mid = 0.5 * (lo + hi);
            match mgf_zero_count(d, mid) {
                Ok(0) => lo = mid,
                _ => hi = mid,
            }
        }
        return Err(Error::CircleOutsideRegion {
            radius: reach,
            limit: lo,
        });
    }

    let mut max_ratio: f64 = 0.0;
    let mut max_cancellation: f64 = 1.0;
    for &r in radial_fracs {
        let rho = circle(r);
        for j in 0..angular_count {
            let theta = TAU * j as f64 / angular_count as f64;
            let z = Complex64::from_polar(r * disk, theta);
            let (phi3, cancel) = cauchy_third_derivative(d, z, rho, cauchy_nodes)?;
            max_cancellation = max_cancellation.max(cancel);
            max_ratio = max_ratio.max(phi3.norm() / (tau * var));
        }
    }
    Ok(ClassCertificate {
        class_name: ClassName::A1Grid,
        order_constraints: Vec::new(),
        tau_estimate: tau * max_ratio,
        max_order: 3,
        holds_at: Some(tau),
        holds: Some(max_ratio <= 1.0),
        max_ratio: Some(max_ratio),
        grid: Some(A1GridParams {
            radial_fracs: radial_fracs.to_vec(),
            angular_count,
            cauchy_nodes,
            max_cancellation,
            zero_free_radius: reach,
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{discretized_gaussian, poisson, poisson_with_tolerance, rademacher};

    #[test]
    fn rademacher_cumulants() {
        let k = cumulants_upto(&rademacher(), 6).unwrap();
        assert_eq!(k.values, vec![0.0, 1.0, 0.0, -2.0, 0.0, 16.0]);
    }

    #[test]
    fn poisson_cumulants_are_flat() {
        let d = poisson(3.0).unwrap().centered();
        let k = cumulants_upto(&d, 6).unwrap();
        assert!(k.order(1).abs() < 1e-13);
        for m in 2..=6 {
            assert!((k.order(m) - 3.0).abs() < 1e-9, "γ_{m} = {}", k.order(m));
        }
    }

    #[test]
    fn point_mass_cumulants_vanish() {
        let d = LatticeDistribution::point_mass(0.0).unwrap();
        assert!(cumulants_upto(&d, 8)
            .unwrap()
            .values
            .iter()
            .all(|&g| g == 0.0));
        assert!(matches!(
            cumulants_upto(&d, 17),
            Err(Error::OrderAboveCap { .. })
        ));
    }

    #[test]
    fn statulevicius_examples() {
        let c = statulevicius_tau(&rademacher(), 4).unwrap();
        assert!((c.tau_estimate - 6f64.powf(-0.5)).abs() < 1e-15);
        assert_eq!(c.binding_order(), Some(4));
        let p = poisson(5.0).unwrap().centered();
        let c = statulevicius_tau(&p, 8).unwrap();
        assert!((c.tau_estimate - 1.0 / 3.0).abs() < 1e-9);
        assert_eq!(c.binding_order(), Some(3));
    }

    #[test]
    fn gaussian_grid_has_negligible_tau() {
        let g = discretized_gaussian(0.0, 1.0, 0.25, 12.0).unwrap();
        let c = statulevicius_tau(&g, 16).unwrap();
        assert!(c.tau_estimate <= 1e-3, "{c:?}");
    }

    #[test]
    fn bernstein_examples() {
        let c = bernstein_tau_1d(&rademacher(), 4).unwrap();
        assert!((c.tau_estimate - 12f64.powf(-0.5)).abs() < 1e-15);
        assert_eq!(c.order_constraints[0].tau, 0.0);
        let tau0 = 0.7;
        let b = rademacher().affine(tau0, 0.0).unwrap();
        assert!(bernstein_tau_1d(&b, 12).unwrap().tau_estimate <= tau0);
        let shifted = rademacher().affine(1.0, 0.1).unwrap();
        assert!(matches!(
            bernstein_tau_1d(&shifted, 4),
            Err(Error::NotCentered(_))
        ));
    }

    #[test]
    fn sakhanenko_examples() {
        let r = rademacher();
        let two = sakhanenko_holds(&r, 2.0).unwrap();
        assert!(two.holds);
        assert!((two.ratio - 0.5f64.exp() / 2.0).abs() < 1e-15);
        assert!(!sakhanenko_holds(&r, 1.0).unwrap().holds);
        assert!((sakhanenko_tau(&r).unwrap() - 1.763_222_834_351_896_7).abs() < 1e-12);
        assert!(sakhanenko_holds(&r, 0.0).is_err());
    }

    #[test]
    fn cauchy_matches_closed_forms() {
        let r = rademacher();
        for &(re, im) in &[(0.3, 0.2), (-0.5, 0.6), (0.0, 0.9), (0.9, 0.0)] {
            let z = Complex64::new(re, im);
            let (got, _) = cauchy_third_derivative(&r, z, 0.005, 256).unwrap();
            let t = z.tanh();
            let want = -2.0 * t * (Complex64::new(1.0, 0.0) - t * t);
            assert!(
                (got - want).norm() <= 1e-8 * want.norm(),
                "z = {z}: {got} vs {want}"
            );
        }
        let lambda = 4.0;
        let p = poisson(lambda).unwrap().centered();
        let z = Complex64::new(0.4, -0.7);
        let (got, _) = cauchy_third_derivative(&p, z, 0.005, 256).unwrap();
        let want = lambda * z.exp();
        assert!((got - want).norm() <= 1e-8 * want.norm(), "{got} vs {want}");
    }

    #[test]
    fn a1_rademacher_grid() {
        let c = a1_grid_check(&rademacher(), 1.0, &[0.25, 0.5, 0.75, 0.99], 64).unwrap();
        let ratio = c.max_ratio.unwrap();
        // the imaginary direction approaches the poles of tanh at ±iπ/2
        assert!(ratio > 1.0);
        let real_only = a1_grid_check(&rademacher(), 1.0, &[0.66], 2).unwrap();
        assert!(real_only.max_ratio.unwrap() < 4.0 / (3.0 * 3f64.sqrt()) + 1e-8);
    }

    #[test]
    fn a1_poisson_ratio_near_e() {
        let lambda = 3.0;
        let p = poisson_with_tolerance(lambda, 1e-280).unwrap().centered();
        let c = a1_grid_check(&p, 1.0, &[0.25, 0.5, 0.75, 0.99], 64).unwrap();
        let ratio = c.max_ratio.unwrap();
        // tilting by Re z = 0.99 reaches far into the tail, hence the tight cut
        assert!((ratio - 0.99f64.exp()).abs() < 1e-8, "{ratio}");
        assert_eq!(c.holds, Some(false));
        let at_e = a1_grid_check(&p, std::f64::consts::E, &[0.25, 0.5, 0.75, 0.99], 64).unwrap();
        assert_eq!(at_e.holds, Some(true));
    }

    #[test]
    fn a1_detects_mgf_zeros() {
        // cosh vanishes at ±iπ/2, inside |z| < 2
        assert_eq!(mgf_zero_count(&rademacher(), 2.0).unwrap(), 2);
        assert!(matches!(
            a1_grid_check(&rademacher(), 0.5, &[0.99], 8),
            Err(Error::CircleOutsideRegion { .. })
        ));
    }

    #[test]
    fn certificate_json_round_trip() {
        let c = statulevicius_tau(&rademacher(), 6).unwrap().at(1.0);
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.contains("\"class_name\":\"statulevicius\""));
        let back: ClassCertificate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
    }
}
