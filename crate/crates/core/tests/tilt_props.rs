mod common;

use clt_transport::tilt::{esscher_transform, solve_tilt};
use clt_transport::Distribution1d;
use common::{centered_lattice, lattice};
use num_complex::Complex64;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn tilting_back_recovers_the_law(d in lattice(12), h in -1.5f64..1.5) {
        let there = esscher_transform(&d, h).unwrap().tilted;
        let back = esscher_transform(&there, -h).unwrap().tilted;
        prop_assert!(back.tv_distance(&d) <= 1e-12);
    }

    #[test]
    fn tilted_mean_is_cgf_slope(d in lattice(12), h in -1.5f64..1.5) {
        let t = esscher_transform(&d, h).unwrap();
        let step = 1e-5;
        let phi = |s: f64| d.cgf(Complex64::new(s, 0.0)).re;
        let slope = (phi(h + step) - phi(h - step)) / (2.0 * step);
        let mean = t.tilted.mean();
        prop_assert!((mean - slope).abs() <= 1e-6 * mean.abs().max(1.0), "{mean} vs {slope}");
        if d.len() > 1 {
            prop_assert!(t.tilted.variance() > 0.0);
        }
    }

    #[test]
    fn solved_tilt_is_increasing_and_hits_target(d in centered_lattice(10)) {
        let (lo, hi) = (d.min_point(), d.max_point());
        let mut prev = f64::NEG_INFINITY;
        for k in 1..40 {
            let x = lo + (hi - lo) * k as f64 / 40.0;
            let s = solve_tilt(&d, x).unwrap();
            prop_assert!(s.h > prev, "h not increasing at {x}");
            prev = s.h;
            let achieved = esscher_transform(&d, s.h).unwrap().tilted.mean();
            prop_assert!((achieved - x).abs() <= 1e-9 * d.variance().sqrt());
        }
    }
}
