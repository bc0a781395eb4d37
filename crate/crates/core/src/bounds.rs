//! Special functions and numerical checks of the auxiliary inequalities:
//! Mills ratio estimates, a Bernstein-type tail bound, characteristic
//! function closeness, a smoothing bound on the Kolmogorov distance and the
//! displacement bands of the quantile coupling.
//!
//! Each check produces a [`BandReport`]: an inequality `lhs <= C rhs`
//! evaluated on a grid, with the smallest `C` that makes it hold there.

use serde::{Deserialize, Serialize};

use crate::dist::{require_centered, Distribution1d, LatticeDistribution};
use crate::error::{Error, Result};
use crate::numeric::{integrate, CompensatedSum, QuadratureConfig};
use crate::special::{erfcx, std_normal_log_sf};
use crate::transport::coupling_profile;

/// Arithmetic slack allowed when comparing a minimal constant to a
/// supplied one.
pub const BAND_SLACK: f64 = 1e-12;

/// Grid evaluation of `lhs <= C rhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BandReport {
    pub label: String,
    pub x_grid: Vec<f64>,
    /// Second coordinate of each point (`ε` or `t`); empty when unused.
    pub param: Vec<f64>,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    /// `max lhs / rhs` over points with `lhs > 0`, at least 0.
    pub minimal_constant: f64,
    pub constant: Option<f64>,
    pub holds: Option<bool>,
}

impl BandReport {
    fn build(label: &str, x_grid: Vec<f64>, param: Vec<f64>, lhs: Vec<f64>, rhs: Vec<f64>) -> Self {
        let minimal_constant = lhs
            .iter()
            .zip(&rhs)
            .map(|(&l, &r)| {
                if l <= 0.0 {
                    0.0
                } else if r > 0.0 {
                    l / r
                } else {
                    f64::INFINITY
                }
            })
            .fold(0.0, f64::max);
        Self {
            label: label.to_string(),
            x_grid,
            param,
            lhs,
            rhs,
            minimal_constant,
            constant: None,
            holds: None,
        }
    }

    /// Records the verdict at the supplied constant.
    pub fn with_constant(mut self, c: f64) -> Self {
        self.constant = Some(c);
        self.holds = Some(self.holds_at(c));
        self
    }

    pub fn holds_at(&self, c: f64) -> bool {
        self.minimal_constant <= c + BAND_SLACK
    }

    /// Points where `lhs > c rhs` beyond the slack.
    pub fn violations(&self, c: f64) -> usize {
        self.lhs
            .iter()
            .zip(&self.rhs)
            .filter(|(&l, &r)| l > c * r + BAND_SLACK * (c * r).abs().max(l.abs()))
            .count()
    }

    pub fn is_empty(&self) -> bool {
        self.x_grid.is_empty()
    }

    /// Rows `x, param, lhs, rhs` as CSV with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,param,lhs,rhs\n");
        for k in 0..self.x_grid.len() {
            let p = self.param.get(k).map(|v| format!("{v:.11e}")).unwrap_or_default();
            out.push_str(&format!(
                "{:.11e},{},{:.11e},{:.11e}\n",
                self.x_grid[k], p, self.lhs[k], self.rhs[k]
            ));
        }
        out
    }
}

/// `Ξ(x) = e^{x²/2} ∫_x^∞ e^{-y²/2} dy`, through the scaled complementary
/// error function.
pub fn mills_ratio(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::InvalidArgument(format!("Mills ratio needs x > 0, got {x}")));
    }
    Ok((std::f64::consts::PI / 2.0).sqrt() * erfcx(x / std::f64::consts::SQRT_2))
}

/// The six inequalities of the Mills ratio lemma, each over the grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MillsLemmaReport {
    /// `Ξ(x + ε) <= Ξ(x)`.
    pub monotone: BandReport,
    /// `Ξ(x) - Ξ(x + ε) <= ε / x²`.
    pub increment: BandReport,
    /// `(1 - 1/x²) / x <= Ξ(x)`.
    pub lower: BandReport,
    /// `Ξ(x) <= 1/x`.
    pub upper: BandReport,
    /// `1 - Φ(x + ε) <= (1 - Φ(x)) e^{-(2xε + ε²)/2}`.
    pub shift_forward: BandReport,
    /// `1 - Φ(x) <= (1 - Φ(x - ε)) e^{-(2xε - ε²)/2}` for `x > ε`.
    pub shift_back: BandReport,
}

impl MillsLemmaReport {
    pub fn bands(&self) -> [&BandReport; 6] {
        [
            &self.monotone,
            &self.increment,
            &self.lower,
            &self.upper,
            &self.shift_forward,
            &self.shift_back,
        ]
    }

    pub fn violations(&self) -> usize {
        self.bands().iter().map(|b| b.violations(1.0)).sum()
    }

    pub fn holds(&self) -> bool {
        self.bands().iter().all(|b| b.holds == Some(true))
    }
}

/// `n` evenly spaced points on `[a, b]`.
pub fn linear_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect(),
    }
}

/// `x ∈ [0.1, 20]` and `ε ∈ [0.01, 5]`, 100 points each.
pub fn default_mills_grids() -> (Vec<f64>, Vec<f64>) {
    (linear_grid(0.1, 20.0, 100), linear_grid(0.01, 5.0, 100))
}

/// Evaluates the Mills ratio lemma on the product grid. The Gaussian tail
/// inequalities are scale free, so they are checked for `σ = 1` in
/// logarithmic form.
pub fn mills_lemma_check(x_grid: &[f64], eps_grid: &[f64]) -> Result<MillsLemmaReport> {
    if x_grid.iter().chain(eps_grid).any(|&v| !(v > 0.0) || !v.is_finite()) {
        return Err(Error::InvalidArgument("grids must be positive and finite".into()));
    }
    let mut single = (Vec::new(), Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for &x in x_grid {
        let xi = mills_ratio(x)?;
        single.0.push(x);
        single.1.push((1.0 - 1.0 / (x * x)) / x);
        single.2.push(xi);
        single.3.push(xi);
        single.4.push(1.0 / x);
    }
    let lower = BandReport::build("mills_lower", single.0.clone(), Vec::new(), single.1, single.2);
    let upper = BandReport::build("mills_upper", single.0, Vec::new(), single.3, single.4);

    let mut pairs = Pairs::default();
    let mut back = Pairs::default();
    for &x in x_grid {
        let xi = mills_ratio(x)?;
        let log_q = std_normal_log_sf(x);
        for &eps in eps_grid {
            let xi_eps = mills_ratio(x + eps)?;
            pairs.push(x, eps, [xi_eps, xi, xi - xi_eps, eps / (x * x)]);
            // compare in logs, then express both sides relative to the right
            let fwd = std_normal_log_sf(x + eps) - (log_q - (2.0 * x * eps + eps * eps) / 2.0);
            pairs.tail.push((fwd.exp(), 1.0));
            if x > eps {
                let bwd = log_q - (std_normal_log_sf(x - eps) - (2.0 * x * eps - eps * eps) / 2.0);
                back.push(x, eps, [bwd.exp(), 1.0, 0.0, 0.0]);
            }
        }
    }
    let (tail_lhs, tail_rhs): (Vec<f64>, Vec<f64>) = pairs.tail.into_iter().unzip();
    let [mono_l, mono_r, inc_l, inc_r] = pairs.v;
    let [back_l, back_r, _, _] = back.v;
    let band = |label, x, eps, l, r| BandReport::build(label, x, eps, l, r).with_constant(1.0);
    Ok(MillsLemmaReport {
        monotone: band("mills_monotone", pairs.x.clone(), pairs.eps.clone(), mono_l, mono_r),
        increment: band("mills_increment", pairs.x.clone(), pairs.eps.clone(), inc_l, inc_r),
        lower: lower.with_constant(1.0),
        upper: upper.with_constant(1.0),
        shift_forward: band("gaussian_tail_shift_forward", pairs.x, pairs.eps, tail_lhs, tail_rhs),
        shift_back: band("gaussian_tail_shift_back", back.x, back.eps, back_l, back_r),
    })
}

#[derive(Default)]
struct Pairs {
    x: Vec<f64>,
    eps: Vec<f64>,
    v: [Vec<f64>; 4],
    tail: Vec<(f64, f64)>,
}

impl Pairs {
    fn push(&mut self, x: f64, eps: f64, vals: [f64; 4]) {
        self.x.push(x);
        self.eps.push(eps);
        for (col, v) in self.v.iter_mut().zip(vals) {
            col.push(v);
        }
    }
}

/// `max{exp(-x²/4σ²), exp(-x/4τ)}`.
pub fn bernstein_tail(sigma: f64, tau: f64, x: f64) -> Result<f64> {
    if !(sigma > 0.0 && tau > 0.0) {
        return Err(Error::InvalidArgument(format!("need sigma, tau > 0, got {sigma}, {tau}")));
    }
    if !(x >= 0.0) {
        return Err(Error::InvalidArgument(format!("need x >= 0, got {x}")));
    }
    Ok(f64::max(-x * x / (4.0 * sigma * sigma), -x / (4.0 * tau)).exp())
}

/// Exact upper tails `P{ξ >= x}` at the nonnegative atoms against
/// [`bernstein_tail`]. The minimal constant is the smallest multiplier `c`
/// such that the bound at `c τ` holds at every atom, so `holds` means the
/// bound is valid at `τ` itself.
pub fn tail_bound_verify(d: &LatticeDistribution, tau: f64) -> Result<BandReport> {
    require_centered(d)?;
    let var = d.variance();
    if !(var > 0.0) {
        return Err(Error::Degenerate);
    }
    let sigma = var.sqrt();
    let mut xs = Vec::new();
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    let mut multiplier: f64 = 0.0;
    for i in 0..d.len() {
        let x = d.support()[i];
        if x < 0.0 {
            continue;
        }
        let p = d.upper_tail_at(i);
        let bound = bernstein_tail(sigma, tau, x)?;
        let gaussian_branch = (-x * x / (4.0 * sigma * sigma)).exp();
        let needed = if p <= gaussian_branch {
            0.0
        } else if p >= 1.0 {
            f64::INFINITY
        } else {
            // e^{-x / 4cτ} >= p
            x / (4.0 * tau * -p.ln())
        };
        multiplier = multiplier.max(needed);
        xs.push(x);
        lhs.push(p);
        rhs.push(bound);
    }
    let mut report = BandReport::build("bernstein_tail", xs, Vec::new(), lhs, rhs);
    report.minimal_constant = multiplier;
    Ok(report.with_constant(1.0))
}

/// `e^{iy} - 1 - iy + y²/2` as `(re, im)`, without cancellation.
fn char_remainder(y: f64) -> (f64, f64) {
    if y.abs() < 1.0 {
        // cos y - 1 + y²/2 = Σ_{k>=2} (-1)^k y^{2k}/(2k)!, sin y - y = Σ_{k>=1} (-1)^k y^{2k+1}/(2k+1)!
        let y2 = y * y;
        let (mut re, mut im) = (0.0, 0.0);
        let mut term_re = y2 * y2 / 24.0;
        let mut term_im = -y * y2 / 6.0;
        for k in 2..12 {
            re += term_re;
            im += term_im;
            let kf = k as f64;
            term_re *= -y2 / ((2.0 * kf + 1.0) * (2.0 * kf + 2.0));
            term_im *= -y2 / ((2.0 * kf) * (2.0 * kf + 1.0));
        }
        (re, im)
    } else {
        (y.cos() - 1.0 + 0.5 * y * y, y.sin() - y)
    }
}

/// `e^{-w} - 1 + w` for `w >= 0`.
fn exp_remainder(w: f64) -> f64 {
    if w < 0.5 {
        let mut term = w * w / 2.0;
        let mut sum = 0.0;
        for k in 3..30 {
            sum += term;
            term *= -w / k as f64;
        }
        sum
    } else {
        (-w).exp_m1() + w
    }
}

/// `|E e^{itξ} - e^{-σ²t²/2}|` for the centered version of `d`, using the
/// second-order remainders of both sides so that small `t` keeps full
/// relative precision.
pub fn cf_difference(d: &LatticeDistribution, t: f64) -> f64 {
    let mean = d.mean();
    let mut re = CompensatedSum::new();
    let mut im = CompensatedSum::new();
    let mut var = CompensatedSum::new();
    for (&x, &m) in d.support().iter().zip(d.masses()) {
        let y = x - mean;
        let (r, i) = char_remainder(t * y);
        re.add(m * r);
        im.add(m * i);
        var.add(m * y * y);
    }
    let g = exp_remainder(0.5 * var.value() * t * t);
    (re.value() - g).hypot(im.value())
}

/// `|F̂(t) - Φ̂(t)|` against `(τ/6) σ² |t|³ exp(-σ² t²/3)` on `t_grid`; the
/// minimal constant is the smallest τ-multiplier that covers the grid.
pub fn cf_bound_report(d: &LatticeDistribution, tau: f64, t_grid: &[f64]) -> Result<BandReport> {
    if !(tau > 0.0) {
        return Err(Error::InvalidArgument(format!("tau must be positive, got {tau}")));
    }
    if let Some(&t) = t_grid.iter().find(|&&t| !(t.abs() * tau <= 1.0)) {
        return Err(Error::InvalidArgument(format!("grid point {t} lies outside |t| tau <= 1")));
    }
    let var = d.variance();
    let mut lhs = Vec::with_capacity(t_grid.len());
    let mut rhs = Vec::with_capacity(t_grid.len());
    for &t in t_grid {
        let at = t.abs();
        lhs.push(if t == 0.0 { 0.0 } else { cf_difference(d, t) });
        rhs.push(tau / 6.0 * var * at * at * at * (-var * t * t / 3.0).exp());
    }
    Ok(BandReport::build("cf_difference", t_grid.to_vec(), Vec::new(), lhs, rhs).with_constant(1.0))
}

/// Smoothing bound on `sup |F - Φ|` with Esseen's constants.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SmoothingBound {
    pub value: f64,
    /// `(2/π) ∫_0^T |F̂ - Φ̂| / t dt`.
    pub integral_term: f64,
    /// `24 / (π √(2π) σ T)`.
    pub density_term: f64,
    pub quadrature_error: f64,
}

/// Esseen's smoothing inequality with level `T` against the Gaussian
/// companion. The integrand is even in `t`, so the integral over
/// `[-T, T]` is twice the one over `[0, T]`.
pub fn smoothing_rho_bound(d: &LatticeDistribution, t_max: f64) -> Result<SmoothingBound> {
    if !(t_max > 0.0) || !t_max.is_finite() {
        return Err(Error::InvalidArgument(format!("smoothing level must be positive, got {t_max}")));
    }
    let var = d.variance();
    if !(var > 0.0) {
        return Err(Error::Degenerate);
    }
    let sigma = var.sqrt();
    let spread = d.max_point() - d.min_point();
    // one break per period of the widest oscillation
    let pieces = ((t_max * spread / std::f64::consts::TAU).ceil() as usize).clamp(1, 4000);
    let breaks = linear_grid(0.0, t_max, pieces + 1);
    let q = integrate(
        |t| if t == 0.0 { 0.0 } else { cf_difference(d, t) / t },
        0.0,
        t_max,
        &breaks,
        QuadratureConfig { abs_tol: 1e-10, rel_tol: 1e-10, max_subdivisions: 20_000 },
    )?;
    let integral_term = 2.0 / std::f64::consts::PI * q.value;
    let density_term = 24.0 / (std::f64::consts::PI * (2.0 * std::f64::consts::PI).sqrt() * sigma * t_max);
    Ok(SmoothingBound {
        value: integral_term + density_term,
        integral_term,
        density_term,
        quadrature_error: 2.0 / std::f64::consts::PI * q.error,
    })
}

/// Coupling displacement bands: a bounded band near the center and a
/// quadratic band in the moderate deviation zone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CouplingBandReport {
    pub tau: f64,
    pub sigma: f64,
    /// `max |x - η| <= c₇ τ` over atoms with `|x| <= 2σ`.
    pub center: BandReport,
    /// `max |x - η| <= c₁₁ τ x² / σ²` over atoms with
    /// `2σ <= |x| <= c₁₀ σ² / τ`, one entry per `c₁₀`.
    pub moderate: Vec<ModerateBand>,
    /// Atoms whose partner range reached the profile clip.
    pub clipped_atoms: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModerateBand {
    pub c10: f64,
    /// Region upper end `c₁₀ σ² / τ`; the region is empty when this is
    /// below `2σ`.
    pub limit: f64,
    pub band: BandReport,
}

/// Relative margin on the band region thresholds.
pub const REGION_SLACK: f64 = 1e-12;

/// Values of `c₁₀` swept by [`coupling_band_report`].
pub const C10_SWEEP: [f64; 3] = [0.1, 0.2, 0.5];

/// Worst-case displacement of each atom under the quantile coupling with
/// its Gaussian companion, against the two bands. Empty regions produce
/// empty reports.
pub fn coupling_band_report(f: &LatticeDistribution, tau: f64) -> Result<CouplingBandReport> {
    if !(tau > 0.0) {
        return Err(Error::InvalidArgument(format!("tau must be positive, got {tau}")));
    }
    require_centered(f)?;
    let g = f.gaussian_companion()?;
    let sigma = g.sd();
    let var = sigma * sigma;
    let profile = coupling_profile(f, &g);
    let clipped_atoms = profile.iter().filter(|e| e.clipped_lo || e.clipped_hi).count();

    let (mut xs, mut lhs, mut rhs) = (Vec::new(), Vec::new(), Vec::new());
    // region ends are widened by a relative rounding margin so that atoms
    // sitting exactly on a threshold are not lost to the last bit
    let inside = |x: f64, lo: f64, hi: f64| x >= lo * (1.0 - REGION_SLACK) && x <= hi * (1.0 + REGION_SLACK);
    for e in profile.iter().filter(|e| inside(e.atom.abs(), 0.0, 2.0 * sigma)) {
        xs.push(e.atom);
        lhs.push(e.max_displacement);
        rhs.push(tau);
    }
    let center = BandReport::build("coupling_center", xs, Vec::new(), lhs, rhs);

    let moderate = C10_SWEEP
        .iter()
        .map(|&c10| {
            let limit = c10 * var / tau;
            let (mut xs, mut lhs, mut rhs) = (Vec::new(), Vec::new(), Vec::new());
            for e in profile.iter().filter(|e| inside(e.atom.abs(), 2.0 * sigma, limit)) {
                xs.push(e.atom);
                lhs.push(e.max_displacement);
                rhs.push(tau * e.atom * e.atom / var);
            }
            ModerateBand {
                c10,
                limit,
                band: BandReport::build("coupling_moderate", xs, Vec::new(), lhs, rhs),
            }
        })
        .collect();
    Ok(CouplingBandReport { tau, sigma, center, moderate, clipped_atoms })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{binomial, discretized_gaussian, rademacher};

    #[test]
    fn mills_values() {
        assert!((mills_ratio(1.0).unwrap() - 0.655_679_542_418_798_5).abs() < 1e-14);
        assert!((mills_ratio(2.0).unwrap() - 0.421_369_229_288_054_5).abs() < 1e-14);
        assert!((50.0 * mills_ratio(50.0).unwrap() - 0.999_600_479_042_678_4).abs() < 1e-13);
        assert!(mills_ratio(0.0).is_err());
    }

    #[test]
    fn mills_lemma_single_point_and_default_grid() {
        let r = mills_lemma_check(&[1.0], &[0.5]).unwrap();
        assert!(r.holds());
        let (xs, es) = default_mills_grids();
        let r = mills_lemma_check(&xs, &es).unwrap();
        assert_eq!(r.violations(), 0);
        assert!(r.holds());
        assert_eq!(r.monotone.x_grid.len(), 10_000);
    }

    #[test]
    fn bernstein_examples() {
        assert_eq!(bernstein_tail(1.0, 1.0, 0.0).unwrap(), 1.0);
        assert!((bernstein_tail(1.0, 1.0, 2.0).unwrap() - (-0.5f64).exp()).abs() < 1e-16);
        let r = tail_bound_verify(&rademacher(), 1.0).unwrap();
        assert_eq!(r.lhs, vec![0.5]);
        assert!((r.rhs[0] - (-0.25f64).exp()).abs() < 1e-16);
        assert_eq!(r.holds, Some(true));
    }

    #[test]
    fn bounded_sum_tails() {
        let d = crate::dist::centered_bernoulli(0.5).unwrap().power_convolve(100).unwrap();
        let r = tail_bound_verify(&d, 0.5).unwrap();
        assert_eq!(r.violations(1.0), 0);
        assert_eq!(r.holds, Some(true));
    }

    #[test]
    fn remainders_match_direct_forms() {
        for y in [-3.0, -0.9, -0.2, 0.3, 0.99, 2.5] {
            let (re, im) = char_remainder(y);
            assert!((re - (y.cos() - 1.0 + y * y / 2.0)).abs() < 1e-15);
            assert!((im - (y.sin() - y)).abs() < 1e-15);
        }
        for w in [0.01, 0.3, 0.49, 0.7, 4.0] {
            assert!((exp_remainder(w) - ((-w).exp() - 1.0 + w)).abs() < 1e-16);
        }
    }

    #[test]
    fn cf_report_examples() {
        let d = binomial(25, 0.5).unwrap().centered();
        let grid = linear_grid(-2.0, 2.0, 64);
        let r = cf_bound_report(&d, 0.5, &grid).unwrap();
        assert!(r.minimal_constant.is_finite() && r.minimal_constant > 0.0);
        assert!(cf_bound_report(&d, 0.5, &[2.5]).is_err());
        let zero = cf_bound_report(&d, 0.5, &[0.0]).unwrap();
        assert_eq!((zero.lhs[0], zero.rhs[0], zero.minimal_constant), (0.0, 0.0, 0.0));
    }

    #[test]
    fn smoothing_on_a_fine_gaussian() {
        let d = discretized_gaussian(0.0, 1.0, 0.01, 12.0).unwrap();
        let b = smoothing_rho_bound(&d, 2.0).unwrap();
        assert!(b.integral_term < 1e-4, "{b:?}");
        let want = 24.0 / (std::f64::consts::PI * (2.0 * std::f64::consts::PI).sqrt() * 2.0);
        assert!((b.density_term - want).abs() < 1e-4);
    }

    #[test]
    fn coupling_bands_rademacher_and_binomial() {
        let r = coupling_band_report(&rademacher(), 1.0).unwrap();
        assert_eq!(r.center.x_grid.len(), 2);
        assert_eq!(r.clipped_atoms, 2);
        assert!(r.moderate.iter().all(|m| m.band.is_empty()));

        let d = binomial(64, 0.5).unwrap().centered().affine(0.25, 0.0).unwrap();
        let r = coupling_band_report(&d, 0.25).unwrap();
        assert!(r.center.minimal_constant > 0.0 && r.center.minimal_constant.is_finite());
        let lhs = &r.center.lhs;
        let n = lhs.len();
        for k in 0..n {
            assert!((lhs[k] - lhs[n - 1 - k]).abs() < 1e-12);
        }
    }

    #[test]
    fn threshold_atoms_are_kept() {
        // standardized binomial(16, 1/2): atoms at ±2σ and c₁₀σ²/τ = 2 for c₁₀ = 0.5
        let d = binomial(16, 0.5).unwrap().standardized().unwrap();
        let r = coupling_band_report(&d, 0.25).unwrap();
        assert_eq!(r.center.x_grid.len(), 9);
        let widest = r.moderate.iter().find(|m| m.c10 == 0.5).unwrap();
        assert_eq!(widest.band.x_grid.len(), 2);
        assert!(r.moderate.iter().filter(|m| m.c10 < 0.5).all(|m| m.band.is_empty()));
    }
}
