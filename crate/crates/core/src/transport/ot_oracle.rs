use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::dist::LatticeDistribution;
use crate::error::{Error, Result};
use crate::numeric::CompensatedSum;

/// Largest `rows * cols` accepted by [`discrete_ot_oracle`].
pub const ORACLE_MAX_CELLS: usize = 40_000;

const ROUNDING: f64 = 1e-13;

/// Optimal plan of a discrete transport problem.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OtSolution {
    pub cost: f64,
    /// Basic cells `(row, col, mass)` of the final plan; zero-mass cells
    /// are degenerate basis members.
    pub plan: Vec<(usize, usize, f64)>,
    pub pivots: usize,
}

/// Minimal `Σ π_ij c(|x_i - y_j|)` over couplings `π` of `mu` and `nu`, by
/// the transportation simplex (MODI potentials on a spanning-tree basis).
///
/// The start is the north-west corner rule with the columns reversed, an
/// antitone plan, so that the comonotone optimum has to be reached by
/// pivoting rather than being assumed.
pub fn discrete_ot_oracle(
    mu: &LatticeDistribution,
    nu: &LatticeDistribution,
    cost: impl Fn(f64) -> f64,
) -> Result<OtSolution> {
    let (m, n) = (mu.len(), nu.len());
    if m.saturating_mul(n) > ORACLE_MAX_CELLS {
        return Err(Error::OracleSizeCap { rows: m, cols: n });
    }
    let raw: Vec<f64> = mu
        .support()
        .iter()
        .flat_map(|&x| nu.support().iter().map(move |&y| (x - y).abs()))
        .map(&cost)
        .collect();
    if raw.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("transport cost"));
    }
    // subtracting row and column minima shifts every plan's cost by the same
    // constant and keeps the pivoting arithmetic on the scale of the
    // competitive cells rather than of the largest cost
    let (c, offset) = reduce_costs(&raw, m, n, mu.masses(), nu.masses());
    let at = |i: usize, j: usize| c[i * n + j];

    let mut basis = antitone_corner(mu.masses(), nu.masses());
    let max_pivots = 50 * (m + n) * (m + n) + 1000;
    let mut pivots = 0;
    loop {
        let (u, v) = potentials(m, n, &basis, &at);
        let mut entering = None;
        let mut best = 0.0;
        for (i, &ui) in u.iter().enumerate() {
            for (j, &vj) in v.iter().enumerate() {
                let r = at(i, j) - ui - vj;
                // reduced costs below the rounding level of their terms
                // do not count as improving
                let noise = ROUNDING * (at(i, j).abs() + ui.abs() + vj.abs());
                if r < -noise && r < best {
                    best = r;
                    entering = Some((i, j));
                }
            }
        }
        let Some((ei, ej)) = entering else { break };
        if pivots == max_pivots {
            return Err(Error::NoConvergence(format!("transport simplex after {pivots} pivots")));
        }
        pivots += 1;
        let path = tree_path(m, n, &basis, ei, ej);
        // cells on the path alternate: decrease, increase, ..., decrease
        // on ties the most expensive cell leaves, so that costly zero-flow
        // cells do not linger in the basis and inflate the potentials
        let (leave_pos, theta) = path
            .iter()
            .step_by(2)
            .map(|&k| (k, basis[k].2))
            .fold((usize::MAX, f64::INFINITY), |acc, (k, x)| {
                let costlier = acc.0 != usize::MAX && {
                    let (i, j, _) = basis[k];
                    let (ai, aj, _) = basis[acc.0];
                    at(i, j) > at(ai, aj)
                };
                if x < acc.1 || (x == acc.1 && costlier) {
                    (k, x)
                } else {
                    acc
                }
            });
        for (step, &k) in path.iter().enumerate() {
            if step % 2 == 0 {
                basis[k].2 = (basis[k].2 - theta).max(0.0);
            } else {
                basis[k].2 += theta;
            }
        }
        basis[leave_pos] = (ei, ej, theta);
    }
    let total = basis
        .iter()
        .map(|&(i, j, x)| x * raw[i * n + j])
        .collect::<CompensatedSum>()
        .value();
    let reduced = basis.iter().map(|&(i, j, x)| x * at(i, j)).collect::<CompensatedSum>().value();
    debug_assert!((reduced + offset - total).abs() <= 1e-9 * total.abs().max(1.0));
    Ok(OtSolution { cost: total, plan: basis, pivots })
}

/// Row then column minima subtracted from the cost matrix, with the
/// constant `Σ a_i r_i + Σ b_j s_j` removed from every plan's cost.
fn reduce_costs(raw: &[f64], m: usize, n: usize, a: &[f64], b: &[f64]) -> (Vec<f64>, f64) {
    let mut c = raw.to_vec();
    let mut offset = CompensatedSum::new();
    for i in 0..m {
        let row = &mut c[i * n..(i + 1) * n];
        let r = row.iter().copied().fold(f64::INFINITY, f64::min);
        row.iter_mut().for_each(|v| *v -= r);
        offset.add(a[i] * r);
    }
    for j in 0..n {
        let s = (0..m).map(|i| c[i * n + j]).fold(f64::INFINITY, f64::min);
        (0..m).for_each(|i| c[i * n + j] -= s);
        offset.add(b[j] * s);
    }
    (c, offset.value())
}

/// North-west corner rule with the columns taken in reverse order; yields
/// `m + n - 1` basic cells forming a spanning tree.
fn antitone_corner(a: &[f64], b: &[f64]) -> Vec<(usize, usize, f64)> {
    let (m, n) = (a.len(), b.len());
    let mut supply = a.to_vec();
    let mut demand = b.to_vec();
    let mut cells = Vec::with_capacity(m + n - 1);
    let (mut i, mut k) = (0, 0);
    while i < m && k < n {
        let j = n - 1 - k;
        let x = supply[i].min(demand[j]);
        supply[i] -= x;
        demand[j] -= x;
        cells.push((i, j, x));
        if i == m - 1 {
            k += 1;
        } else if k == n - 1 || supply[i] <= demand[j] {
            i += 1;
        } else {
            k += 1;
        }
    }
    cells
}

/// Tree adjacency: node `i < m` is row `i`, node `m + j` is column `j`;
/// entries are `(neighbor, basis index)`.
fn adjacency(m: usize, n: usize, basis: &[(usize, usize, f64)]) -> Vec<Vec<(usize, usize)>> {
    let mut adj = vec![Vec::new(); m + n];
    for (k, &(i, j, _)) in basis.iter().enumerate() {
        adj[i].push((m + j, k));
        adj[m + j].push((i, k));
    }
    adj
}

/// Dual potentials with `u_i + v_j = c_ij` on every basic cell, `u_0 = 0`.
fn potentials(
    m: usize,
    n: usize,
    basis: &[(usize, usize, f64)],
    at: &impl Fn(usize, usize) -> f64,
) -> (Vec<f64>, Vec<f64>) {
    let adj = adjacency(m, n, basis);
    let mut pot = vec![f64::NAN; m + n];
    pot[0] = 0.0;
    let mut queue = VecDeque::from([0]);
    while let Some(node) = queue.pop_front() {
        for &(next, k) in &adj[node] {
            if pot[next].is_nan() {
                let (i, j, _) = basis[k];
                pot[next] = at(i, j) - pot[node];
                queue.push_back(next);
            }
        }
    }
    let v = pot.split_off(m);
    (pot, v)
}

/// Basis indices on the tree path from row `i` to column `j`, in order.
fn tree_path(m: usize, n: usize, basis: &[(usize, usize, f64)], i: usize, j: usize) -> Vec<usize> {
    let adj = adjacency(m, n, basis);
    let mut via: Vec<Option<(usize, usize)>> = vec![None; m + n];
    let mut seen = vec![false; m + n];
    seen[i] = true;
    let mut queue = VecDeque::from([i]);
    let target = m + j;
    while let Some(node) = queue.pop_front() {
        if node == target {
            break;
        }
        for &(next, k) in &adj[node] {
            if !seen[next] {
                seen[next] = true;
                via[next] = Some((node, k));
                queue.push_back(next);
            }
        }
    }
    let mut path = Vec::new();
    let mut node = target;
    while let Some((prev, k)) = via[node] {
        path.push(k);
        node = prev;
    }
    path.reverse();
    path
}
