#![allow(dead_code)]

use clt_transport::LatticeDistribution;
use proptest::prelude::*;

/// Lattice law with 1..=max_atoms atoms on distinct points of a half-integer
/// grid, with masses bounded away from zero.
pub fn lattice(max_atoms: usize) -> impl Strategy<Value = LatticeDistribution> {
    proptest::collection::btree_map(-20i32..=20, 0.02f64..1.0, 1..=max_atoms).prop_map(|m| {
        let (pts, mass): (Vec<f64>, Vec<f64>) = m.into_iter().map(|(k, w)| (0.5 * k as f64, w)).unzip();
        LatticeDistribution::with_tolerance(pts, mass, 0.0).unwrap()
    })
}

/// Nondegenerate centered lattice law.
pub fn centered_lattice(max_atoms: usize) -> impl Strategy<Value = LatticeDistribution> {
    lattice(max_atoms).prop_filter("nondegenerate", |d| d.len() >= 2).prop_map(|d| d.centered())
}

pub fn rel_close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs())
}
