use super::cost::{affine_piece, power_piece};
use super::coupling::{z_at, CouplingPiece, QuantileCoupling};
use super::{OrliczCost, TransportResult};
use crate::dist::{Distribution1d, GaussianLaw, LatticeDistribution, Law, LogLattice};
use crate::error::{Error, Result};
use crate::numeric::{brent, CompensatedSum};
use crate::special::{
    erfcx, std_normal_cdf, std_normal_interval, std_normal_pdf, std_normal_quantile_upper_log, std_normal_sf,
};

/// `Φ(b) - Φ(a)` with sign, for any order of `a` and `b`.
fn phi_diff(b: f64, a: f64) -> f64 {
    if b >= a {
        std_normal_interval(a, b)
    } else {
        -std_normal_interval(b, a)
    }
}

/// `c - Φ(z)` for a cumulative level `c` whose complement is `s = 1 - c`.
fn level_minus_phi(c: f64, s: f64, z: f64) -> f64 {
    if c <= 0.5 {
        c - std_normal_cdf(z)
    } else {
        std_normal_sf(z) - s
    }
}

/// `K(z) = ∫_z^∞ Q(t) dt = φ(z) - z Q(z)`.
fn upper_tail_integral(z: f64) -> f64 {
    if z == f64::INFINITY {
        return 0.0;
    }
    if z == f64::NEG_INFINITY {
        return f64::INFINITY;
    }
    if z <= 0.0 {
        return std_normal_pdf(z) - z * std_normal_sf(z);
    }
    // φ(z) (1 - z R(z)) with the Mills ratio R from erfcx
    let mills = (std::f64::consts::PI / 2.0).sqrt() * erfcx(z / std::f64::consts::SQRT_2);
    std_normal_pdf(z) * (1.0 - z * mills)
}

/// `H(z) = ∫_{-∞}^z Φ(t) dt = z Φ(z) + φ(z)`.
fn lower_tail_integral(z: f64) -> f64 {
    upper_tail_integral(-z)
}

/// `∫_a^b |c - Φ(z)| dz` for a level `c = 1 - s`, `a <= b`, split where
/// `Φ` crosses `c`.
fn level_gap_integral(c: f64, s: f64, a: f64, b: f64) -> f64 {
    if !(a < b) {
        return 0.0;
    }
    if c <= 0.0 {
        // ∫ Φ
        return lower_tail_integral(b) - lower_tail_integral(a);
    }
    if s <= 0.0 {
        return upper_tail_integral(a) - upper_tail_integral(b);
    }
    let cross = z_at(c, s).clamp(a, b);
    // ∫_a^cross (c - Φ) + ∫_cross^b (Φ - c)
    let below = |lo: f64, hi: f64| -> f64 {
        if !(lo < hi) {
            return 0.0;
        }
        if c <= 0.5 {
            c * (hi - lo) - (lower_tail_integral(hi) - lower_tail_integral(lo))
        } else {
            (upper_tail_integral(lo) - upper_tail_integral(hi)) - s * (hi - lo)
        }
    };
    let above = |lo: f64, hi: f64| -> f64 {
        if !(lo < hi) {
            return 0.0;
        }
        if c <= 0.5 {
            (lower_tail_integral(hi) - lower_tail_integral(lo)) - c * (hi - lo)
        } else {
            s * (hi - lo) - (upper_tail_integral(lo) - upper_tail_integral(hi))
        }
    };
    below(a, cross).max(0.0) + above(cross, b).max(0.0)
}

/// Points where two normal densities are equal; the stationary points of
/// the difference of their distribution functions.
fn density_crossings(m1: f64, s1: f64, m2: f64, s2: f64) -> Vec<f64> {
    let (p1, p2) = (1.0 / (s1 * s1), 1.0 / (s2 * s2));
    let a = p1 - p2;
    let b = -2.0 * (m1 * p1 - m2 * p2);
    let c = m1 * m1 * p1 - m2 * m2 * p2 - 2.0 * (s2 / s1).ln();
    if a.abs() <= 1e-14 * p1.max(p2) {
        if b == 0.0 {
            return Vec::new();
        }
        return vec![-c / b];
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return Vec::new();
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let mut roots = vec![q / a];
    if q != 0.0 {
        roots.push(c / q);
    }
    roots
}

/// `sup_x [Φ((x - m1)/s1) - Φ((x - m2)/s2)]`, which is `>= 0`.
fn gaussian_sup_difference(m1: f64, s1: f64, m2: f64, s2: f64) -> f64 {
    density_crossings(m1, s1, m2, s2)
        .into_iter()
        .map(|x| phi_diff((x - m1) / s1, (x - m2) / s2))
        .fold(0.0, f64::max)
}

fn kolmogorov_lattice_gaussian(d: &LatticeDistribution, g: &GaussianLaw) -> f64 {
    let mut best: f64 = 0.0;
    for i in 0..d.len() {
        let z = g.standardize(d.support()[i]);
        let after = level_minus_phi(d.cdf_at(i), d.sf_at(i), z);
        let before = if i == 0 {
            -std_normal_cdf(z)
        } else {
            level_minus_phi(d.cdf_at(i - 1), d.upper_tail_at(i), z)
        };
        best = best.max(after.abs()).max(before.abs());
    }
    best
}

fn kolmogorov_lattices(f: &LatticeDistribution, g: &LatticeDistribution) -> f64 {
    merged_points(f, g)
        .into_iter()
        .map(|x| (f.cdf(x) - g.cdf(x)).abs())
        .fold(0.0, f64::max)
}

fn merged_points(f: &LatticeDistribution, g: &LatticeDistribution) -> Vec<f64> {
    let mut pts: Vec<f64> = f.support().iter().chain(g.support()).copied().collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();
    pts
}

/// Uniform distance `sup_x |F(x) - G(x)|`, exact at jumps and left limits.
pub fn kolmogorov_distance(f: &Law, g: &Law) -> TransportResult {
    let value = match (f, g) {
        (Law::Lattice(a), Law::Lattice(b)) => kolmogorov_lattices(a, b),
        (Law::Lattice(a), Law::Gaussian(b)) | (Law::Gaussian(b), Law::Lattice(a)) => {
            kolmogorov_lattice_gaussian(a, b)
        }
        (Law::Gaussian(a), Law::Gaussian(b)) => {
            let up = gaussian_sup_difference(a.mean(), a.sd(), b.mean(), b.sd());
            let down = gaussian_sup_difference(b.mean(), b.sd(), a.mean(), a.sd());
            up.max(down)
        }
    };
    TransportResult::exact(value, "kolmogorov")
}

/// `G(x - ε) - ε <= F(x) <= G(x + ε) + ε` for all `x`.
fn levy_feasible(f: &Law, g: &Law, eps: f64) -> bool {
    match (f, g) {
        (Law::Lattice(a), Law::Gaussian(b)) | (Law::Gaussian(b), Law::Lattice(a)) => {
            // F jumps up at atoms: check the value there against G(x + ε),
            // and the left limit against G(x - ε)
            (0..a.len()).all(|i| {
                let x = a.support()[i];
                let up = level_minus_phi(a.cdf_at(i), a.sf_at(i), b.standardize(x + eps));
                let before = if i == 0 {
                    -std_normal_cdf(b.standardize(x - eps))
                } else {
                    level_minus_phi(a.cdf_at(i - 1), a.upper_tail_at(i), b.standardize(x - eps))
                };
                up <= eps && -before <= eps
            })
        }
        (Law::Lattice(a), Law::Lattice(b)) => {
            // breakpoints are the atoms of either law, shifted by ε for the
            // other; at a shifted atom the unshifted side is read at the atom
            // itself so that `(y - ε) + ε` rounding cannot miss its jump
            let upper_ok = a.support().iter().all(|&x| a.cdf(x) - b.cdf(x + eps) <= eps)
                && (0..b.len()).all(|j| {
                    let y = b.support()[j];
                    a.cdf(y - eps) - b.cdf_at(j) <= eps
                });
            let lower_ok = a.support().iter().all(|&x| b.cdf(x - eps) - a.cdf(x) <= eps)
                && (0..b.len()).all(|j| {
                    let y = b.support()[j];
                    b.cdf_at(j) - a.cdf(y + eps) <= eps
                });
            upper_ok && lower_ok
        }
        (Law::Gaussian(a), Law::Gaussian(b)) => {
            gaussian_sup_difference(b.mean() + eps, b.sd(), a.mean(), a.sd()) <= eps
                && gaussian_sup_difference(a.mean(), a.sd(), b.mean() - eps, b.sd()) <= eps
        }
    }
}

/// Lévy distance by bisection on `ε`, with the band condition checked
/// exactly at jump points.
pub fn levy_distance(f: &Law, g: &Law) -> TransportResult {
    const TOL: f64 = 1e-12;
    let rho = kolmogorov_distance(f, g).value;
    if rho == 0.0 {
        return TransportResult::exact(0.0, "levy");
    }
    let mut lo = 0.0;
    let mut hi = if levy_feasible(f, g, rho) { rho } else { 1.0 };
    let mut iterations = 0;
    while hi - lo > TOL {
        let mid = 0.5 * (lo + hi);
        if levy_feasible(f, g, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
        iterations += 1;
    }
    TransportResult {
        value: hi,
        objective_at_value: hi,
        quadrature_error: hi - lo,
        iterations,
        method: "levy-bisection".into(),
        cross_check: None,
    }
}

/// `∫ |F - G| dx` from closed-form Gaussian integrals.
fn w1_cdf_route(f: &Law, g: &Law) -> f64 {
    match (f, g) {
        (Law::Lattice(a), Law::Lattice(b)) => {
            let pts = merged_points(a, b);
            pts.windows(2)
                .map(|w| (a.cdf(w[0]) - b.cdf(w[0])).abs() * (w[1] - w[0]))
                .collect::<CompensatedSum>()
                .value()
        }
        (Law::Lattice(a), Law::Gaussian(b)) | (Law::Gaussian(b), Law::Lattice(a)) => {
            let n = a.len();
            let z: Vec<f64> = a.support().iter().map(|&x| b.standardize(x)).collect();
            let mut acc = CompensatedSum::new();
            acc.add(lower_tail_integral(z[0]));
            for i in 0..n - 1 {
                acc.add(level_gap_integral(a.cdf_at(i), a.sf_at(i), z[i], z[i + 1]));
            }
            acc.add(upper_tail_integral(z[n - 1]));
            b.sd() * acc.value()
        }
        (Law::Gaussian(a), Law::Gaussian(b)) => {
            let (m1, s1, m2, s2) = (a.mean(), a.sd(), b.mean(), b.sd());
            if s1 == s2 {
                return (m1 - m2).abs();
            }
            // the distribution functions cross once, at x*
            let x = (m1 * s2 - m2 * s1) / (s2 - s1);
            let (z1, z2) = ((x - m1) / s1, (x - m2) / s2);
            let left = s1 * lower_tail_integral(z1) - s2 * lower_tail_integral(z2);
            let right = s2 * upper_tail_integral(z2) - s1 * upper_tail_integral(z1);
            left.abs() + right.abs()
        }
    }
}

/// `∫_0^1 |F^{-1}(u) - G^{-1}(u)|^p du` over the coupling pieces, with an
/// error estimate.
fn coupling_power_integral(pieces: &[CouplingPiece], p: f64) -> Result<(f64, f64)> {
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    for piece in pieces {
        match *piece {
            CouplingPiece::Atoms { mass, x, y } => acc.add(mass * (x - y).abs().powf(p)),
            CouplingPiece::Affine { alpha, beta, z_lo, z_hi, .. } => {
                let (v, e) = power_piece(alpha, beta, z_lo, z_hi, p)?;
                acc.add(v);
                err += e;
            }
        }
    }
    Ok((acc.value(), err))
}

/// `W_1` computed twice: as `∫|F - G| dx` (returned) and as
/// `∫_0^1 |F^{-1} - G^{-1}| du` by adaptive quadrature (in `cross_check`).
/// The two must agree within `max(1e-8, 1e-6 W_1)`.
pub fn w1_distance(f: &Law, g: &Law) -> Result<TransportResult> {
    let cdf_route = w1_cdf_route(f, g);
    let coupling = QuantileCoupling::new(f, g);
    let (quantile_route, err) = coupling_power_integral(&coupling.pieces, 1.0)?;
    if (cdf_route - quantile_route).abs() > f64::max(1e-8, 1e-6 * cdf_route) {
        return Err(Error::CrossCheckFailed { cdf_route, quantile_route });
    }
    Ok(TransportResult {
        value: cdf_route,
        objective_at_value: cdf_route,
        quadrature_error: err.max((cdf_route - quantile_route).abs()),
        iterations: coupling.pieces.len(),
        method: "cdf-integral".into(),
        cross_check: Some(quantile_route),
    })
}

/// `W_p = (∫_0^1 |F^{-1} - G^{-1}|^p du)^{1/p}`.
pub fn wp_distance(f: &Law, g: &Law, p: f64) -> Result<TransportResult> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::InvalidArgument(format!("W_p needs p >= 1, got {p}")));
    }
    let coupling = QuantileCoupling::new(f, g);
    let (integral, err) = coupling_power_integral(&coupling.pieces, p)?;
    let value = integral.powf(1.0 / p);
    let value_err = if integral > 0.0 { value * err / (p * integral) } else { err.powf(1.0 / p) };
    Ok(TransportResult {
        value,
        objective_at_value: integral,
        quadrature_error: value_err,
        iterations: coupling.pieces.len(),
        method: format!("quantile-quadrature-p{p}"),
        cross_check: None,
    })
}

fn objective_on(pieces: &[CouplingPiece], psi: OrliczCost, a: f64) -> Result<(f64, f64)> {
    let mut acc = CompensatedSum::new();
    let mut err = 0.0;
    for piece in pieces {
        match *piece {
            CouplingPiece::Atoms { mass, x, y } => acc.add(mass * psi.eval((x - y).abs() / a)),
            CouplingPiece::Affine { alpha, beta, z_lo, z_hi, .. } => {
                let (v, e) = affine_piece(psi, alpha, beta, z_lo, z_hi, a)?;
                if v.is_infinite() {
                    return Ok((f64::INFINITY, 0.0));
                }
                acc.add(v);
                err += e;
            }
        }
    }
    Ok((acc.value(), err))
}

/// `∫_0^1 ψ(|F^{-1}(u) - G^{-1}(u)| / a) du`; `+∞` when the integral
/// overflows.
pub fn orlicz_objective(f: &Law, g: &Law, psi: OrliczCost, a: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::InvalidArgument(format!("scale must be positive, got {a}")));
    }
    psi.validate()?;
    Ok(objective_on(&QuantileCoupling::new(f, g).pieces, psi, a)?.0)
}

/// Tolerances of the scale search in [`orlicz_wasserstein`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrliczConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub objective_tol: f64,
    pub max_doublings: usize,
}

impl Default for OrliczConfig {
    fn default() -> Self {
        Self { rel_tol: 1e-6, abs_tol: 1e-9, objective_tol: 1e-9, max_doublings: 200 }
    }
}

/// Smallest `a` with `∫ ψ(|Δ|/a) du <= 1` on the quantile coupling.
///
/// For `ψ(t) = t^p` this is `W_p` itself. Otherwise the search starts at
/// `a_0 = max(W_1, 1e-12)`, where the objective is at least 1 because
/// `ψ(t) >= t`, grows `a` geometrically until the objective drops below 1,
/// and refines with Brent's method on the bracket.
///
/// The refinement runs until the objective is within `objective_tol` of 1;
/// the objective is smooth and strictly decreasing there, so this is
/// reached long before the scale tolerances and the returned `a` meets
/// both.
pub fn orlicz_wasserstein(f: &Law, g: &Law, psi: OrliczCost) -> Result<TransportResult> {
    orlicz_wasserstein_with(f, g, psi, OrliczConfig::default())
}

pub fn orlicz_wasserstein_with(
    f: &Law,
    g: &Law,
    psi: OrliczCost,
    cfg: OrliczConfig,
) -> Result<TransportResult> {
    psi.validate()?;
    if f == g {
        return Ok(TransportResult::exact(0.0, "identical"));
    }
    match psi.homogeneity() {
        Some(1.0) => {
            let w1 = w1_distance(f, g)?;
            return Ok(TransportResult { objective_at_value: 1.0, method: "homogeneous-w1".into(), ..w1 });
        }
        Some(p) => {
            let wp = wp_distance(f, g, p)?;
            return Ok(TransportResult { objective_at_value: 1.0, method: format!("homogeneous-w{p}"), ..wp });
        }
        None => {}
    }
    let coupling = QuantileCoupling::new(f, g);
    scale_search(&coupling.pieces, psi, w1_cdf_route(f, g), cfg)
}

/// Bracketing and Brent refinement of the Orlicz scale on fixed coupling
/// pieces, starting from `w1` (the objective there is at least 1).
fn scale_search(pieces: &[CouplingPiece], psi: OrliczCost, w1: f64, cfg: OrliczConfig) -> Result<TransportResult> {
    if w1 == 0.0 {
        return Ok(TransportResult::exact(0.0, "identical"));
    }
    let objective = |a: f64| objective_on(pieces, psi, a).map(|r| r.0);
    let mut lo = w1.max(1e-12);
    let mut hi = lo;
    let mut iterations = 0;
    let mut last = objective(hi)?;
    while last > 1.0 {
        lo = hi;
        hi *= 2.0;
        iterations += 1;
        if iterations > cfg.max_doublings || !hi.is_finite() {
            return Err(Error::BracketFailure(last));
        }
        last = objective(hi)?;
    }
    if hi == lo {
        // ψ(t) >= t makes the objective at W_1 at least 1; equality means
        // the displacement is zero almost everywhere
        return Ok(TransportResult {
            value: hi,
            objective_at_value: last,
            quadrature_error: 0.0,
            iterations,
            method: "orlicz-bracket".into(),
            cross_check: None,
        });
    }
    let mut failure = None;
    let root = brent(
        |a| match objective(a) {
            Ok(v) => v - 1.0,
            Err(e) => {
                failure.get_or_insert(e);
                f64::NAN
            }
        },
        lo,
        hi,
        0.0,
        4.0 * f64::EPSILON,
        cfg.objective_tol,
        500,
    );
    if let Some(e) = failure {
        return Err(e);
    }
    let root = root?;
    let value = root.x;
    let objective_at_value = objective(value)?;
    if (objective_at_value - 1.0).abs() > cfg.objective_tol
        && root.bracket.1 - root.bracket.0 > cfg.abs_tol + cfg.rel_tol * value
    {
        return Err(Error::NoConvergence(format!("Orlicz scale search stopped at a = {value}")));
    }
    Ok(TransportResult {
        value,
        objective_at_value,
        quadrature_error: root.bracket.1 - root.bracket.0,
        iterations: iterations + root.iterations,
        method: "orlicz-brent".into(),
        cross_check: None,
    })
}

/// `Φ^{-1}` at the level with logarithmic tails `(ln c, ln s)`.
fn z_at_log(log_cdf: f64, log_sf: f64) -> f64 {
    if log_cdf <= -std::f64::consts::LN_2 {
        -std_normal_quantile_upper_log(log_cdf)
    } else {
        std_normal_quantile_upper_log(log_sf)
    }
}

/// Quantile coupling of a log lattice with a Gaussian: one affine piece per
/// atom over the standard-variable range of its Gaussian partners.
fn log_lattice_pieces(d: &LogLattice, g: &GaussianLaw) -> Vec<CouplingPiece> {
    let n = d.len();
    let mut lo = f64::NEG_INFINITY;
    (0..n)
        .map(|i| {
            let hi = if i + 1 == n { f64::INFINITY } else { z_at_log(d.log_cdf_at(i), d.log_sf_at(i)) };
            let piece = CouplingPiece::Affine {
                alpha: d.support()[i] - g.mean(),
                beta: -g.sd(),
                z_lo: lo,
                z_hi: hi.max(lo),
                mass: d.log_masses()[i].exp(),
            };
            lo = hi.max(lo);
            piece
        })
        .collect()
}

/// `W_ψ` between a log lattice and a Gaussian law.
///
/// Same search as [`orlicz_wasserstein_with`], but the Gaussian partner
/// range of each atom is read from logarithmic tail probabilities, so atoms
/// far below the double range still carry their share of the Gaussian
/// tail. For exponential costs that tail decides the answer once the scale
/// is small compared with the standard deviation.
pub fn orlicz_wasserstein_log_gaussian(
    f: &LogLattice,
    g: &GaussianLaw,
    psi: OrliczCost,
    cfg: OrliczConfig,
) -> Result<TransportResult> {
    psi.validate()?;
    let pieces = log_lattice_pieces(f, g);
    if let Some(p) = psi.homogeneity() {
        let (integral, err) = coupling_power_integral(&pieces, p)?;
        let value = integral.powf(1.0 / p);
        return Ok(TransportResult {
            value,
            objective_at_value: 1.0,
            quadrature_error: if integral > 0.0 { value * err / (p * integral) } else { err.powf(1.0 / p) },
            iterations: pieces.len(),
            method: format!("homogeneous-w{p}"),
            cross_check: None,
        });
    }
    let (w1, _) = objective_on(&pieces, OrliczCost::Absolute, 1.0)?;
    scale_search(&pieces, psi, w1, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::rademacher;

    const W1_RADEMACHER: f64 = 0.535_377_321_547_879_8;
    const W2_RADEMACHER: f64 = 0.635_791_536_900_476_0;
    const WPSI_RADEMACHER: f64 = 0.882_517_856_410_458_6;

    fn rad() -> Law {
        rademacher().into()
    }

    fn std() -> Law {
        GaussianLaw::standard().into()
    }

    #[test]
    fn kolmogorov_rademacher() {
        let r = kolmogorov_distance(&rad(), &std());
        assert!((r.value - 0.341_344_746_068_542_9).abs() < 1e-15);
        assert_eq!(kolmogorov_distance(&rad(), &rad()).value, 0.0);
    }

    #[test]
    fn kolmogorov_gaussian_pairs() {
        let a: Law = GaussianLaw::new(0.0, 1.0).unwrap().into();
        let b: Law = GaussianLaw::new(1.0, 1.0).unwrap().into();
        let want = 2.0 * std_normal_cdf(0.5) - 1.0;
        assert!((kolmogorov_distance(&a, &b).value - want).abs() < 1e-15);
        let c: Law = GaussianLaw::new(0.0, 4.0).unwrap().into();
        // crossing of the densities at x^2 = 8 ln 2 / 3
        let x = (8.0 * 2f64.ln() / 3.0).sqrt();
        let want = std_normal_cdf(x) - std_normal_cdf(x / 2.0);
        assert!((kolmogorov_distance(&a, &c).value - want).abs() < 1e-15);
    }

    #[test]
    fn w1_rademacher_both_routes() {
        let r = w1_distance(&rad(), &std()).unwrap();
        assert!((r.value - W1_RADEMACHER).abs() < 1e-14);
        assert!((r.cross_check.unwrap() - W1_RADEMACHER).abs() < 1e-12);
        let sym = w1_distance(&std(), &rad()).unwrap();
        assert!((sym.value - r.value).abs() < 1e-15);
    }

    #[test]
    fn w1_gaussian_translation_and_scale() {
        let a: Law = GaussianLaw::new(0.0, 1.0).unwrap().into();
        let b: Law = GaussianLaw::new(-2.5, 1.0).unwrap().into();
        assert!((w1_distance(&a, &b).unwrap().value - 2.5).abs() < 1e-15);
        let c: Law = GaussianLaw::new(0.0, 9.0).unwrap().into();
        // E|Z - 3Z| = 2 E|Z|
        let want = 2.0 * (2.0 / std::f64::consts::PI).sqrt();
        assert!((w1_distance(&a, &c).unwrap().value - want).abs() < 1e-13);
    }

    #[test]
    fn wp_examples() {
        let w2 = wp_distance(&rad(), &std(), 2.0).unwrap();
        assert!((w2.value - W2_RADEMACHER).abs() < 1e-12);
        let w1 = wp_distance(&rad(), &std(), 1.0).unwrap();
        assert!((w1.value - W1_RADEMACHER).abs() < 1e-12);
        let a: Law = GaussianLaw::new(0.0, 1.0).unwrap().into();
        let b: Law = GaussianLaw::new(0.0, 6.25).unwrap().into();
        assert!((wp_distance(&a, &b, 2.0).unwrap().value - 1.5).abs() < 1e-12);
        assert_eq!(wp_distance(&rad(), &rad(), 3.0).unwrap().value, 0.0);
    }

    #[test]
    fn orlicz_examples() {
        let obj = orlicz_objective(&rad(), &std(), OrliczCost::ExpMinusOne, 1.0).unwrap();
        assert!((obj - 0.824_699_659_303_469_0).abs() < 1e-14);
        let w = orlicz_wasserstein(&rad(), &std(), OrliczCost::ExpMinusOne).unwrap();
        assert!((w.value - WPSI_RADEMACHER).abs() < 1e-6 * WPSI_RADEMACHER);
        assert!((w.objective_at_value - 1.0).abs() <= 1e-8);
        let abs = orlicz_wasserstein(&rad(), &std(), OrliczCost::Absolute).unwrap();
        assert_eq!(abs.value, w1_distance(&rad(), &std()).unwrap().value);
        let absobj = orlicz_objective(&rad(), &std(), OrliczCost::Absolute, 1.0).unwrap();
        assert!((absobj - W1_RADEMACHER).abs() < 1e-13);
        assert_eq!(orlicz_wasserstein(&std(), &std(), OrliczCost::ExpMinusOne).unwrap().value, 0.0);
        assert!(orlicz_objective(&std(), &std(), OrliczCost::ExpMinusOne, 0.3).unwrap() == 0.0);
    }

    #[test]
    fn levy_examples() {
        let l = levy_distance(&rad(), &std()).value;
        assert!(l > 0.0 && l <= 0.341_344_746_068_543);
        let d0: Law = LatticeDistribution::point_mass(0.0).unwrap().into();
        let d5: Law = LatticeDistribution::point_mass(0.5).unwrap().into();
        assert!((levy_distance(&d0, &d5).value - 0.5).abs() < 1e-11);
        let d3: Law = LatticeDistribution::point_mass(3.0).unwrap().into();
        assert!((levy_distance(&d0, &d3).value - 1.0).abs() < 1e-11);
        assert_eq!(levy_distance(&rad(), &rad()).value, 0.0);
    }
}
