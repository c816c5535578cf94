// Copyright 2026 the Sessile Authors
// SPDX-License-Identifier: Apache-2.0 OR MIT

use proptest::prelude::*;
use sessile::analytic::{self, AdhesionParam};
use sessile::curve::{random_admissible, sample_closed_form, symmetrize_support, GraphCurve};
use sessile::solver::discrete_gradient;
use sessile::verify::{self, gap_tolerance};

fn beta(b: f64) -> AdhesionParam {
    AdhesionParam::new(b).unwrap()
}

fn graph_beta() -> impl Strategy<Value = f64> {
    0.0..0.999_f64
}

fn heights(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0..3.0_f64, n - 1).prop_map(|mut v| {
        v.insert(0, 0.0);
        v.push(0.0);
        v
    })
}

fn curve() -> impl Strategy<Value = GraphCurve> {
    (0.05..4.0_f64, 2usize..40)
        .prop_flat_map(|(p, n)| (Just(p), heights(n)))
        .prop_map(|(p, u)| GraphCurve::new(p, u).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 512, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn length_inequality_holds(c in curve(), b in graph_beta()) {
        let m = c.metrics(beta(b)).unwrap();
        prop_assert!(m.gap >= -gap_tolerance(m.length), "gap {} length {}", m.gap, m.length);
    }

    #[test]
    fn energy_bounded_by_minimum(c in curve(), b in graph_beta()) {
        let m = c.metrics(beta(b)).unwrap();
        let floor = 2.0 * (m.area * analytic::shape_constant(beta(b)).unwrap()).sqrt();
        prop_assert!(m.energy >= floor - gap_tolerance(m.length));
    }

    #[test]
    fn reflection_is_bit_exact(c in curve(), b in graph_beta()) {
        let r = c.reversed();
        prop_assert_eq!(c.length().to_bits(), r.length().to_bits());
        prop_assert_eq!(c.area().to_bits(), r.area().to_bits());
        prop_assert_eq!(
            c.isoperimetric_gap(beta(b)).unwrap().to_bits(),
            r.isoperimetric_gap(beta(b)).unwrap().to_bits()
        );
    }

    #[test]
    fn zero_extension_preserves_area(
        a in -2.0..-0.1_f64,
        n in 2usize..20,
        pad in 1usize..10,
        raw in prop::collection::vec(0.0..2.0_f64, 30),
    ) {
        // support [a, b] with b chosen so the padding lands on the grid
        let h = -a / n as f64;
        let b = a + (n + pad) as f64 * h;
        let mut u = vec![0.0];
        u.extend_from_slice(&raw[..n + pad - 1]);
        u.push(0.0);
        let ext = symmetrize_support(a, b, &u).unwrap();
        let orig_area: f64 = 0.5 * h * u.windows(2).map(|w| w[0] + w[1]).sum::<f64>();
        let orig_len: f64 = u.windows(2).map(|w| h.hypot(w[1] - w[0])).sum();
        let padding = 2.0 * ext.half_width() - (b - a);
        prop_assert!((ext.area() - orig_area).abs() <= 1e-12 * (1.0 + orig_area));
        prop_assert!((ext.length() - orig_len - padding).abs() <= 1e-12 * (1.0 + orig_len));
    }

    #[test]
    fn scaling_covariance(c in curve(), s in 0.1..10.0_f64, b in graph_beta()) {
        let scaled = GraphCurve::new(
            s * c.half_width(),
            c.heights().iter().map(|u| s * u).collect(),
        ).unwrap();
        let tol = 1e-12 * (1.0 + scaled.length());
        prop_assert!((scaled.length() - s * c.length()).abs() <= tol);
        prop_assert!((scaled.area() - s * s * c.area()).abs() <= 1e-12 * (1.0 + scaled.area()));
        let g0 = c.isoperimetric_gap(beta(b)).unwrap();
        let g1 = scaled.isoperimetric_gap(beta(b)).unwrap();
        prop_assert!((g1 - s * g0).abs() <= 1e-10 * (1.0 + scaled.length()));
    }

    #[test]
    fn closed_form_scales(b in graph_beta(), area in 0.01..100.0_f64, s in 0.1..10.0_f64) {
        let x = analytic::closed_form_solution(beta(b), area).unwrap();
        let y = analytic::closed_form_solution(beta(b), s * s * area).unwrap();
        prop_assert!((y.radius / (s * x.radius) - 1.0).abs() <= 1e-12);
        prop_assert!((y.half_width / (s * x.half_width) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn closed_form_identities(b in 0.001..0.999_f64, area in 0.01..100.0_f64) {
        let bp = beta(b);
        let sol = analytic::closed_form_solution(bp, area).unwrap();
        let sin = (1.0 - b * b).sqrt();
        // λp = sin of the angle
        prop_assert!((sol.lambda * sol.half_width - sin).abs() <= 1e-12);
        // endpoint slope of the arc
        let slope = sol.half_width / sol.center_depth;
        prop_assert!((slope - sin / b).abs() <= 1e-9 * (1.0 + sin / b));
        // the arc encloses the prescribed area
        let enclosed = analytic::segment_area(sol.radius, sol.half_width).unwrap();
        prop_assert!((enclosed / area - 1.0).abs() <= 1e-12);
        // g is minimized at p₀ with value J*
        let j = analytic::minimal_energy(bp, area).unwrap();
        let g = analytic::lower_bound_g(bp, area, sol.half_width).unwrap();
        prop_assert!((g - j).abs() <= 1e-12 * j);
        for f in [0.9, 1.1] {
            prop_assert!(analytic::lower_bound_g(bp, area, f * sol.half_width).unwrap() > j);
        }
        // the length bound is attained by the arc
        let rhs = analytic::length_lower_bound(bp, area, sol.half_width).unwrap();
        prop_assert!((sol.arc_length() - rhs).abs() <= 1e-12 * rhs);
    }

    #[test]
    fn gradient_matches_differences(seed in any::<u64>(), b in graph_beta()) {
        let c = random_admissible(seed, (0.2, 2.0), 12, 1.0).unwrap();
        let check = verify::gradient_check(&c, beta(b), 0.3, 2.0, c.area() + 0.05, 1e-6).unwrap();
        prop_assert!(check.max_relative_error <= 1e-6, "{:?}", check);
    }
}

#[test]
fn shape_constant_and_angle_decrease() {
    let mut prev_c = f64::INFINITY;
    let mut prev_angle = f64::INFINITY;
    for i in 0..1000 {
        let b = beta(i as f64 / 1000.0);
        let c = analytic::shape_constant(b).unwrap();
        let angle = analytic::endpoint_angle(b).unwrap();
        assert!(c < prev_c && angle < prev_angle, "at β = {}", b.value());
        prev_c = c;
        prev_angle = angle;
    }
}

#[test]
fn sampled_arc_gradient_converges() {
    // interior residual of the sampled arc at λ = 1/R
    let b = beta(0.5);
    let lambda = analytic::closed_form_solution(b, 1.0).unwrap().lambda;
    let residual = |n: usize| {
        let c = sample_closed_form(b, 1.0, n).unwrap();
        discrete_gradient(&c, b, lambda, 0.0, 1.0)
            .unwrap()
            .iter()
            .fold(0.0_f64, |m, g| m.max(g.abs()))
    };
    let mut prev = residual(64);
    for n in [128, 256, 512] {
        let next = residual(n);
        let ratio = prev / next;
        assert!((3.5..=8.5).contains(&ratio), "n = {n}: ratio {ratio}");
        prev = next;
    }
}

#[test]
fn gradient_sweep_three_betas() {
    let betas = [beta(0.1), beta(0.5), beta(0.9)];
    let g = verify::gradient_check_sweep(&betas, 100, 1, 32).unwrap();
    assert!(g.max_relative_error <= 1e-6, "{g:?}");
}
