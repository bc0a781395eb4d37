//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clt_transport::bounds::{default_mills_grids, mills_lemma_check, tail_bound_verify};
use clt_transport::cumulants::statulevicius_tau;
use clt_transport::dist::{binomial, binomial_log, centered_bernoulli, poisson, rademacher, rademacher_sum};
use clt_transport::tilt::{esscher_transform, solve_tilt};
use clt_transport::transport::{discrete_ot_oracle, orlicz_objective, w1_distance, OrliczCost};
use clt_transport::{LatticeDistribution, Law};
use clt_transport_cli::{run_sweep, SweepConfig, SweepOutcome};
use minilp::{ComparisonOp, OptimizationDirection, Problem};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Outcome of one criterion: pass flag and a one-line detail.
type Check = std::result::Result<String, String>;

fn configs_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

/// Runs a shipped config with every output file disabled.
fn sweep(name: &str) -> std::result::Result<SweepOutcome, String> {
    let mut cfg = SweepConfig::load(configs_dir().join(name)).map_err(|e| format!("{name}: {e}"))?;
    cfg.output = Default::default();
    run_sweep(&cfg).map_err(|e| format!("{name}: {e}"))
}

/// Passes when every named assertion of the sweep is present and passed.
fn sweep_assertions(outcome: &SweepOutcome, names: &[&str]) -> Check {
    let mut details = Vec::new();
    for &name in names {
        let Some(a) = outcome.summary.assertions.iter().find(|a| a.name == name) else {
            return Err(format!("assertion {name} not configured"));
        };
        if !a.passed {
            return Err(format!("{name}: {}", a.detail));
        }
        details.push(format!("{name}: {}", a.detail));
    }
    if outcome.summary.failed_rows > 0 {
        return Err(format!("{} rows with errors", outcome.summary.failed_rows));
    }
    Ok(details.join("; "))
}

fn within_budget(check: Check, elapsed: Duration, budget: Duration) -> Check {
    match check {
        Ok(d) if elapsed > budget => Err(format!("{d}; took {elapsed:.2?}, budget {budget:.0?}")),
        other => other,
    }
}

fn w1_two_routes() -> Check {
    let mut laws: Vec<(String, LatticeDistribution)> = Vec::new();
    for (n, p) in [(1, 0.5), (10, 0.3), (50, 0.1), (200, 0.5)] {
        laws.push((format!("binomial({n},{p})"), binomial(n, p).map_err(|e| e.to_string())?));
    }
    for lambda in [0.5, 3.0, 25.0, 400.0] {
        laws.push((format!("poisson({lambda})"), poisson(lambda).map_err(|e| e.to_string())?));
    }
    for n in [1, 7, 64, 1000] {
        laws.push((format!("rademacher_sum({n})"), rademacher_sum(n).map_err(|e| e.to_string())?));
    }
    let mut worst = 0.0f64;
    for (name, d) in laws {
        let g = d.gaussian_companion().map_err(|e| e.to_string())?;
        let r = w1_distance(&d.into(), &g.into()).map_err(|e| e.to_string())?;
        let other = r.cross_check.ok_or_else(|| format!("{name}: no second route"))?;
        let tol = f64::max(1e-8, 1e-6 * r.value);
        let gap = (r.value - other).abs();
        if gap > tol {
            return Err(format!("{name}: quantile {} vs cdf {other}", r.value));
        }
        worst = worst.max(gap / tol);
    }
    Ok(format!("12 instances, worst gap {worst:.3e} of tolerance"))
}

fn random_lattice(rng: &mut ChaCha8Rng) -> LatticeDistribution {
    let atoms = rng.gen_range(1..=12);
    let mut points: Vec<i32> = (-10..=10).collect();
    for i in 0..atoms {
        let j = rng.gen_range(i..points.len());
        points.swap(i, j);
    }
    let mut chosen = points[..atoms].to_vec();
    chosen.sort_unstable();
    let support = chosen.iter().map(|&k| 0.5 * k as f64).collect();
    let mass = (0..atoms).map(|_| rng.gen_range(0.02..1.0)).collect();
    LatticeDistribution::with_tolerance(support, mass, 0.0).expect("valid random lattice")
}

/// Optimum of the transport linear program by a general-purpose solver.
fn lp_optimum(mu: &LatticeDistribution, nu: &LatticeDistribution, cost: fn(f64) -> f64) -> f64 {
    let mut problem = Problem::new(OptimizationDirection::Minimize);
    let vars: Vec<Vec<_>> = mu
        .support()
        .iter()
        .map(|&x| {
            nu.support()
                .iter()
                .map(|&y| problem.add_var(cost((x - y).abs()), (0.0, f64::INFINITY)))
                .collect()
        })
        .collect();
    for (i, &m) in mu.masses().iter().enumerate() {
        problem.add_constraint(vars[i].iter().map(|&v| (v, 1.0)).collect::<Vec<_>>(), ComparisonOp::Eq, m);
    }
    for (j, &m) in nu.masses().iter().enumerate() {
        problem.add_constraint(vars.iter().map(|row| (row[j], 1.0)).collect::<Vec<_>>(), ComparisonOp::Eq, m);
    }
    problem.solve().expect("transport problem is feasible").objective()
}

fn comonotone_optimality() -> Check {
    let costs: [(OrliczCost, fn(f64) -> f64, &str); 3] = [
        (OrliczCost::Absolute, |t| t, "absolute"),
        (OrliczCost::Power { p: 2.0 }, |t| t * t, "square"),
        (OrliczCost::ExpMinusOne, f64::exp_m1, "exp_minus_one"),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_611);
    let (mut worst_simplex, mut worst_lp) = (0.0f64, 0.0f64);
    for pair in 0..50 {
        let (f, g) = (random_lattice(&mut rng), random_lattice(&mut rng));
        let (lf, lg): (Law, Law) = (f.clone().into(), g.clone().into());
        for (psi, cost, name) in costs {
            let comonotone = orlicz_objective(&lf, &lg, psi, 1.0).map_err(|e| e.to_string())?;
            let simplex = discrete_ot_oracle(&f, &g, cost).map_err(|e| e.to_string())?.cost;
            let lp = lp_optimum(&f, &g, cost);
            let (ds, dl) = ((comonotone - simplex).abs(), (comonotone - lp).abs());
            if ds > 1e-8 || dl > 1e-8 {
                return Err(format!("pair {pair} {name}: comonotone {comonotone}, simplex {simplex}, lp {lp}"));
            }
            worst_simplex = worst_simplex.max(ds);
            worst_lp = worst_lp.max(dl);
        }
    }
    Ok(format!("150 problems, max gap {worst_simplex:.2e} to simplex, {worst_lp:.2e} to generic LP"))
}

fn poisson_bounded() -> Check {
    let out = sweep("poisson_wpsi.toml")?;
    if out.rows.len() != 10 {
        return Err(format!("{} rows, expected 10", out.rows.len()));
    }
    sweep_assertions(&out, &["rows_complete", "wpsi_growth", "max_wpsi"])
}

fn rademacher_scaling() -> Check {
    sweep_assertions(&sweep("rademacher_scaling.toml")?, &["rows_complete", "wpsi_sqrt_n_spread"])
}

fn bounded_w1() -> Check {
    let mut details = Vec::new();
    for name in ["bounded_sums.toml", "binomial_skewed.toml"] {
        details.push(sweep_assertions(&sweep(name)?, &["rows_complete", "max_w1_over_tau"])?);
    }
    Ok(details.join(" | "))
}

fn bounded_rho() -> Check {
    let mut details = Vec::new();
    for name in ["bounded_sums.toml", "binomial_skewed.toml"] {
        let out = sweep(name)?;
        details.push(sweep_assertions(&out, &["max_rho_sigma_over_tau", "smoothing_bounds_rho"])?);
    }
    Ok(details.join(" | "))
}

fn tails() -> Check {
    let mut details = Vec::new();
    for name in ["tails.toml", "bernoulli_tails.toml"] {
        details.push(sweep_assertions(&sweep(name)?, &["rows_complete", "tail_bound"])?);
    }
    // centered Bernoulli(0.3) sums, τ = a.s. bound 0.7
    let base = centered_bernoulli(0.3).map_err(|e| e.to_string())?;
    for n in [1usize, 10, 100, 1000] {
        let d = base.power_convolve(n).map_err(|e| e.to_string())?;
        let report = tail_bound_verify(&d, 0.7).map_err(|e| e.to_string())?;
        if report.holds != Some(true) {
            return Err(format!("bernoulli(0.3) n = {n}: max multiplier {:e}", report.minimal_constant));
        }
    }
    details.push("bernoulli(0.3) sums hold".into());
    Ok(details.join(" | "))
}

fn mills() -> Check {
    let (x, eps) = default_mills_grids();
    let report = mills_lemma_check(&x, &eps).map_err(|e| e.to_string())?;
    match report.violations() {
        0 if report.holds() => Ok(format!("{} points per inequality, 0 violations", x.len() * eps.len())),
        v => Err(format!("{v} violations")),
    }
}

fn rel_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs())
}

fn cumulant_certificates() -> Check {
    let tau = |d: &LatticeDistribution| statulevicius_tau(d, 8).map(|c| c.tau_estimate).map_err(|e| e.to_string());
    for lambda in [1.0, 10.0, 100.0] {
        let t = tau(&poisson(lambda).map_err(|e| e.to_string())?.centered())?;
        if (t - 1.0 / 3.0).abs() > 1e-9 {
            return Err(format!("poisson({lambda}): tau {t}"));
        }
    }
    let t4 = statulevicius_tau(&rademacher(), 4).map_err(|e| e.to_string())?.tau_estimate;
    if (t4 - 6f64.powf(-0.5)).abs() > 1e-9 {
        return Err(format!("rademacher M = 4: tau {t4}"));
    }
    let base = centered_bernoulli(0.3).map_err(|e| e.to_string())?;
    let t = tau(&base)?;
    for a in [-2.5, 0.1, 7.0] {
        let scaled = tau(&base.affine(a, 0.0).map_err(|e| e.to_string())?)?;
        if rel_gap(scaled, a.abs() * t) > 1e-9 {
            return Err(format!("scale {a}: {scaled} vs {}", a.abs() * t));
        }
    }
    // The sum keeps every atom: dropping 1e-12 of tail mass moves the
    // order-7 constraint by 1e-5 relative at n = 64.
    for n in [4u64, 16, 64, 256] {
        let sum = binomial_log(n, 0.3)
            .and_then(|d| d.to_lattice(0.0))
            .map_err(|e| e.to_string())?
            .centered();
        let normalized = sum.affine(1.0 / (n as f64).sqrt(), 0.0).map_err(|e| e.to_string())?;
        let got = tau(&normalized)?;
        let want = t / (n as f64).sqrt();
        if rel_gap(got, want) > 1e-9 {
            return Err(format!("n = {n}: {got} vs {want}"));
        }
    }
    Ok("poisson 1/3, rademacher 6^-1/2, scaling and 1/sqrt(n) normalization".into())
}

fn tilts() -> Check {
    let p4 = poisson(4.0).map_err(|e| e.to_string())?;
    let h = solve_tilt(&p4.centered(), 2.0).map_err(|e| e.to_string())?.h;
    if (h - 1.5f64.ln()).abs() > 1e-9 {
        return Err(format!("poisson(4), x = 2: h = {h}"));
    }
    let h = solve_tilt(&rademacher(), 0.8).map_err(|e| e.to_string())?.h;
    if (h - 0.8f64.atanh()).abs() > 1e-9 {
        return Err(format!("rademacher, x = 0.8: h = {h}"));
    }
    let mut worst_round = 0.0f64;
    for d in [p4.centered(), binomial(30, 0.2).map_err(|e| e.to_string())?.centered()] {
        for h in [-0.7, 0.25, 1.1] {
            let there = esscher_transform(&d, h).map_err(|e| e.to_string())?;
            let back = esscher_transform(&there.tilted, -h).map_err(|e| e.to_string())?;
            let tv = back.tilted.tv_distance(&d);
            if tv > 1e-12 {
                return Err(format!("round trip at h = {h}: TV {tv:e}"));
            }
            worst_round = worst_round.max(tv);
        }
    }
    let mut worst_poisson = 0.0f64;
    for (lambda, h) in [(4.0, 0.3), (4.0, -0.5), (20.0, 0.1)] {
        let tilted = esscher_transform(&poisson(lambda).map_err(|e| e.to_string())?, h).map_err(|e| e.to_string())?;
        let want = poisson(lambda * f64::exp(h)).map_err(|e| e.to_string())?;
        let tv = tilted.tilted.tv_distance(&want);
        if tv > 1e-10 {
            return Err(format!("poisson({lambda}) at h = {h}: TV {tv:e}"));
        }
        worst_poisson = worst_poisson.max(tv);
    }
    Ok(format!("closed forms; round trip TV {worst_round:.1e}; poisson tilt TV {worst_poisson:.1e}"))
}

fn bands() -> Check {
    sweep_assertions(&sweep("binomial_bands.toml")?, &["rows_complete", "c7_spread", "c11_spread", "max_c7", "max_c11"])
}

fn levy() -> Check {
    sweep_assertions(&sweep("bounded_sums.toml")?, &["levy_constant"])
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let criteria: [(&str, fn() -> Check, Option<Duration>); 12] = [
        ("W1 cdf and quantile routes agree", w1_two_routes, Some(secs(10))),
        ("comonotone coupling is optimal", comonotone_optimality, Some(secs(30))),
        ("Poisson W_psi stays bounded", poisson_bounded, Some(secs(300))),
        ("Rademacher W_psi scales like 1/sqrt(n)", rademacher_scaling, Some(secs(300))),
        ("bounded sums W1/tau <= 3", bounded_w1, None),
        ("bounded sums rho sigma/tau <= 2 and smoothing bound", bounded_rho, None),
        ("Bernstein tail bound at multiplier 1", tails, Some(secs(20))),
        ("Mills ratio lemma", mills, None),
        ("cumulant certificates", cumulant_certificates, None),
        ("tilt machinery", tilts, None),
        ("coupling band constants", bands, None),
        ("Levy distance scale", levy, None),
    ];
    let mut failures = 0;
    for (i, (name, run, budget)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = match budget {
            Some(b) => within_budget(result, elapsed, b),
            None => result,
        };
        match result {
            Ok(detail) => println!("PASS {:>2} {name} [{elapsed:.2?}]: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name} [{elapsed:.2?}]: {detail}", i + 1);
            }
        }
    }
    println!("{} of 12 criteria passed", 12 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
