use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::dist::{Distribution1d, GaussianLaw, LatticeDistribution, Law};
use crate::error::Result;
use crate::special::{std_normal_quantile, std_normal_quantile_upper};

/// Probability clip used when reporting Gaussian partner ranges of the
/// extreme atoms.
pub const PROFILE_CLIP: f64 = 1e-14;

/// One piece of the quantile coupling on which the displacement
/// `Δ = F^{-1}(u) - G^{-1}(u)` has a simple form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CouplingPiece {
    /// A u-interval of length `mass` carrying the constant pair `(x, y)`.
    Atoms { mass: f64, x: f64, y: f64 },
    /// `Δ(z) = alpha + beta z` for `z` in `[z_lo, z_hi]`, where `z` is the
    /// standard variable of the Gaussian side and `u = Φ(z)`.
    Affine { alpha: f64, beta: f64, z_lo: f64, z_hi: f64, mass: f64 },
}

impl CouplingPiece {
    pub fn mass(&self) -> f64 {
        match *self {
            CouplingPiece::Atoms { mass, .. } | CouplingPiece::Affine { mass, .. } => mass,
        }
    }
}

/// Comonotone coupling of two laws, split into pieces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantileCoupling {
    pub left: Law,
    pub right: Law,
    pub pieces: Vec<CouplingPiece>,
}

/// `Φ^{-1}` at the level whose lower and upper tails are `(cdf, sf)`,
/// reading whichever side is small to keep tail precision.
pub(crate) fn z_at(cdf: f64, sf: f64) -> f64 {
    if cdf <= 0.5 {
        std_normal_quantile(cdf)
    } else {
        std_normal_quantile_upper(sf)
    }
}

/// Standard-variable range `[z_lo, z_hi]` of the Gaussian partners of
/// atom `i` of `d`.
pub(crate) fn atom_z_range(d: &LatticeDistribution, i: usize) -> (f64, f64) {
    let lo = if i == 0 {
        f64::NEG_INFINITY
    } else {
        z_at(d.cdf_at(i - 1), d.sf_at(i - 1))
    };
    let hi = if i + 1 == d.len() {
        f64::INFINITY
    } else {
        z_at(d.cdf_at(i), d.sf_at(i))
    };
    (lo, hi)
}

/// Cumulative level `(P{X <= x_i}, P{X > x_i})` of atom `i`.
fn level(d: &LatticeDistribution, i: usize) -> (f64, f64) {
    (d.cdf_at(i), d.sf_at(i))
}

/// Orders two levels, reading the upper half through the survival side so
/// that tail atoms of tiny mass stay distinct. Levels within a few ulps are
/// equal.
fn compare_levels(a: (f64, f64), b: (f64, f64)) -> Ordering {
    let (x, y, flip) = if a.0 <= 0.5 && b.0 <= 0.5 { (a.0, b.0, false) } else { (a.1, b.1, true) };
    if (x - y).abs() <= 4.0 * f64::EPSILON * x.abs().max(y.abs()) {
        Ordering::Equal
    } else if flip {
        y.total_cmp(&x)
    } else {
        x.total_cmp(&y)
    }
}

fn lattice_pair(f: &LatticeDistribution, g: &LatticeDistribution) -> Vec<CouplingPiece> {
    let mut pieces = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let mut prev = (0.0, 1.0);
    while i < f.len() && j < g.len() {
        let (lf, lg) = (level(f, i), level(g, j));
        let order = compare_levels(lf, lg);
        let next = if order == Ordering::Greater { lg } else { lf };
        let mass = if next.0 <= 0.5 { next.0 - prev.0 } else { prev.1 - next.1 };
        if mass > 0.0 {
            pieces.push(CouplingPiece::Atoms { mass, x: f.support()[i], y: g.support()[j] });
            prev = next;
        }
        match order {
            Ordering::Equal => {
                i += 1;
                j += 1;
            }
            Ordering::Less => i += 1,
            Ordering::Greater => j += 1,
        }
    }
    pieces
}

fn lattice_gaussian(d: &LatticeDistribution, g: &GaussianLaw, lattice_left: bool) -> Vec<CouplingPiece> {
    let sign = if lattice_left { 1.0 } else { -1.0 };
    (0..d.len())
        .map(|i| {
            let (z_lo, z_hi) = atom_z_range(d, i);
            CouplingPiece::Affine {
                alpha: sign * (d.support()[i] - g.mean()),
                beta: -sign * g.sd(),
                z_lo,
                z_hi,
                mass: d.masses()[i],
            }
        })
        .collect()
}

impl QuantileCoupling {
    pub fn new(left: &Law, right: &Law) -> Self {
        let pieces = match (left, right) {
            (Law::Lattice(f), Law::Lattice(g)) => lattice_pair(f, g),
            (Law::Lattice(f), Law::Gaussian(g)) => lattice_gaussian(f, g, true),
            (Law::Gaussian(f), Law::Lattice(g)) => lattice_gaussian(g, f, false),
            (Law::Gaussian(f), Law::Gaussian(g)) => vec![CouplingPiece::Affine {
                alpha: f.mean() - g.mean(),
                beta: f.sd() - g.sd(),
                z_lo: f64::NEG_INFINITY,
                z_hi: f64::INFINITY,
                mass: 1.0,
            }],
        };
        Self { left: left.clone(), right: right.clone(), pieces }
    }

    /// `(F^{-1}(u), G^{-1}(u))`.
    pub fn at(&self, u: f64) -> Result<(f64, f64)> {
        Ok((self.left.quantile(u)?, self.right.quantile(u)?))
    }
}

/// Gaussian partner range and worst displacement of one atom.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProfileEntry {
    pub atom: f64,
    pub mass: f64,
    /// `(F(x-), F(x)]`.
    pub u_interval: (f64, f64),
    /// Partner values `[G^{-1}(u_lo), G^{-1}(u_hi)]` after clipping.
    pub eta_range: (f64, f64),
    pub max_displacement: f64,
    pub clipped_lo: bool,
    pub clipped_hi: bool,
}

/// For each atom, the Gaussian partners under the quantile coupling and
/// the largest `|x - η|` over them. Partner levels are clipped to
/// `[PROFILE_CLIP, 1 - PROFILE_CLIP]`.
pub fn coupling_profile(f: &LatticeDistribution, g: &GaussianLaw) -> Vec<ProfileEntry> {
    let clip_z = std_normal_quantile_upper(PROFILE_CLIP);
    (0..f.len())
        .map(|i| {
            let (z_lo, z_hi) = atom_z_range(f, i);
            let clipped_lo = z_lo < -clip_z;
            let clipped_hi = z_hi > clip_z;
            let eta_lo = g.point(z_lo.max(-clip_z));
            let eta_hi = g.point(z_hi.min(clip_z));
            let x = f.support()[i];
            let u_lo = if i == 0 { 0.0 } else { f.cdf_at(i - 1) };
            ProfileEntry {
                atom: x,
                mass: f.masses()[i],
                u_interval: (u_lo, f.cdf_at(i)),
                eta_range: (eta_lo, eta_hi),
                max_displacement: (x - eta_lo).abs().max((x - eta_hi).abs()),
                clipped_lo,
                clipped_hi,
            }
        })
        .collect()
}
