use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use proptest::prelude::*;
use quadrature::identities::{
    cos_product, half_angle_cos_series, sec2_series, tan_series, tan_series_limit, Depth,
};
use quadrature::numerics::{
    guarded_cot, guarded_tan, sinc, Angle, Extended, PrecisionContext, Real,
};
use quadrature::quadratrix::{
    cartesian_x, membership, polar_radius, polar_to_cartesian, summarium_spiral, QuadratrixPolar,
    QUADRANT,
};
use quadrature::sequences::{
    closed_form_term, estimate_pi, fit, generate, rectangle_products, run_iteration,
    sequence_limit, FitParams,
};

fn native() -> PrecisionContext {
    PrecisionContext::native()
}

fn u() -> f64 {
    native().unit_roundoff()
}

proptest! {
    #[test]
    fn sinc_is_even(x in -50.0f64..50.0) {
        let ctx = native();
        prop_assert_eq!(sinc(&Angle::new(-x), &ctx), sinc(&Angle::new(x), &ctx));
    }

    #[test]
    fn sinc_matches_quotient_near_zero(x in 1e-12f64..1e-3, negative in any::<bool>()) {
        let x = if negative { -x } else { x };
        let s = sinc(&Angle::new(x), &native());
        prop_assert!((s - x.sin() / x).abs() <= 4.0 * u());
    }

    #[test]
    fn cot_times_tan_is_one(x in 1e-6f64..(FRAC_PI_2 - 1e-6)) {
        let ctx = native();
        let t = guarded_tan(&Angle::new(x), &ctx).unwrap();
        let c = guarded_cot(&Angle::new(x), &ctx).unwrap();
        prop_assert!((t * c - 1.0).abs() <= 8.0 * u());
    }

    #[test]
    fn half_tangent_identity(x in 1e-6f64..(FRAC_PI_2 - 1e-6)) {
        let ctx = native();
        let lhs = guarded_tan(&Angle::new(x / 2.0), &ctx).unwrap();
        let c_half = guarded_cot(&Angle::new(x / 2.0), &ctx).unwrap();
        let c = guarded_cot(&Angle::new(x), &ctx).unwrap();
        // relative to the operands, since the difference cancels
        let scale = c_half.abs() + 2.0 * c.abs();
        prop_assert!((lhs - (c_half - 2.0 * c)).abs() <= 16.0 * u() * scale);
    }

    #[test]
    fn fit_recovers_parameters(phi in 0.05f64..1.55, r in 0.01f64..100.0) {
        let ctx = native();
        let params = FitParams::new(Angle::new(phi), r, &ctx).unwrap();
        let terms = generate(&params, 1, &ctx).unwrap();
        let back = fit(&terms[0], &terms[1], &ctx).unwrap();
        prop_assert!((back.phi().radians() - phi).abs() <= 1e-12 * phi);
        prop_assert!((back.r() - r).abs() <= 1e-12 * r);
    }

    #[test]
    fn products_fall_by_four(phi in 0.3f64..1.55, r in 0.1f64..10.0) {
        let ctx = native();
        let params = FitParams::new(Angle::new(phi), r, &ctx).unwrap();
        let products = rectangle_products(&generate(&params, 6, &ctx).unwrap());
        for w in products.windows(2) {
            prop_assert!((w[1] / w[0] - 0.25).abs() <= 1e-10);
        }
    }

    #[test]
    fn generated_terms_rise_to_limit(phi in 0.05f64..1.55, r in 0.1f64..10.0) {
        let ctx = native();
        let params = FitParams::new(Angle::new(phi), r, &ctx).unwrap();
        let terms = generate(&params, 20, &ctx).unwrap();
        let limit = sequence_limit(&params);
        for w in terms.windows(2) {
            prop_assert!(w[1] > w[0]);
        }
        prop_assert!(terms.iter().all(|&t| t <= limit));
    }

    #[test]
    fn iteration_is_homogeneous(a in 1e-3f64..1e3) {
        let ctx = native();
        let unit = run_iteration(&1.0, 15, &ctx).unwrap();
        let scaled = run_iteration(&a, 15, &ctx).unwrap();
        for (t1, ta) in unit.terms().iter().zip(scaled.terms()) {
            prop_assert!((ta - a * t1).abs() <= 1e-14 * a * t1);
        }
        let e1 = estimate_pi(&unit).unwrap().estimate;
        let ea = estimate_pi(&scaled).unwrap().estimate;
        prop_assert!((e1 - ea).abs() <= 1e-14);
        prop_assert!(scaled.terms().windows(2).all(|w| w[1] > w[0]));
        prop_assert!(scaled.terms().iter().all(|&t| t <= 4.0 * a / PI));
    }

    #[test]
    fn sec2_is_derivative_of_tan(phi in 0.1f64..1.5, m in 0u32..=20) {
        let ctx = native();
        let h = 1e-6;
        let up = tan_series(&Angle::new(phi + h), Depth::Finite(m), &ctx).unwrap();
        let down = tan_series(&Angle::new(phi - h), Depth::Finite(m), &ctx).unwrap();
        let slope = (up.closed() - down.closed()) / (2.0 * h);
        let s = sec2_series(&Angle::new(phi), Depth::Finite(m), &ctx).unwrap();
        prop_assert!((slope - s.closed()).abs() <= 1e-5);
    }

    #[test]
    fn half_angle_is_half_sec2(phi in 0.1f64..1.5, m in 0u32..=20) {
        let ctx = native();
        let h = half_angle_cos_series(&Angle::new(phi), Depth::Finite(m), &ctx).unwrap();
        let s = sec2_series(&Angle::new(phi / 2.0), Depth::Finite(m), &ctx).unwrap();
        let diff = h.series.termwise().unwrap() - 0.5 * s.termwise().unwrap();
        prop_assert!(diff.abs() <= 1e-13);
    }

    #[test]
    fn cos_product_telescopes(phi in 0.1f64..1.5, m in 0u32..=25) {
        let p = cos_product(&Angle::new(phi), Depth::Finite(m), &native()).unwrap();
        prop_assert!(*p.residual().unwrap() <= 1e-13);
    }

    #[test]
    fn tan_series_telescopes(phi in 0.1f64..1.5, m in 0u32..=20) {
        let s = tan_series(&Angle::new(phi), Depth::Finite(m), &native()).unwrap();
        prop_assert!(*s.residual().unwrap() <= 1e-12);
    }

    #[test]
    fn membership_of_generated_points(a in 0.1f64..10.0, k in 0usize..=20) {
        let ctx = native();
        let state = run_iteration(&a, 20, &ctx).unwrap();
        let t = state.terms()[k];
        prop_assert!(membership(t, a * 0.5f64.powi(k as i32), 2.0 * a, 1e-10, &ctx).unwrap());
    }

    #[test]
    fn inverted_polar_point_is_cartesian(phi in 0.01f64..QUADRANT, h in 0.1f64..10.0) {
        let ctx = native();
        let p = QuadratrixPolar::at(phi, QUADRANT, &ctx).unwrap();
        let c = polar_to_cartesian(&p, h).unwrap();
        let x = cartesian_x(c.y, h, &ctx).unwrap();
        prop_assert!((c.x - x).abs() <= 1e-12 * h.max(1.0));
    }
}

#[test]
fn tan_series_partials_are_cotangent_terms() {
    let ctx = native();
    for m in 0..=25 {
        let s = tan_series(&Angle::new(FRAC_PI_4), Depth::Finite(m), &ctx).unwrap();
        let t = closed_form_term(m, &1.0, &ctx).unwrap();
        assert!((s.closed() - t).abs() <= 1e-13, "m = {m}");
    }
}

#[test]
fn extended_tan_series_reaches_limit() {
    let ctx = PrecisionContext::extended(40).unwrap();
    for i in 1..=15 {
        let phi = Angle::new(Extended::from_f64(i as f64 / 10.0, &ctx));
        let s = tan_series(&phi, Depth::Finite(40), &ctx).unwrap();
        let l = tan_series_limit(&phi, &ctx).unwrap();
        let gap = (s.termwise().unwrap().clone() - l).abs().to_f64();
        assert!(gap <= 1e-18, "phi = {}: {gap:e}", i as f64 / 10.0);
    }
}

#[test]
fn spiral_points_lie_on_polar_curve() {
    let ctx = native();
    for m in 0..=25 {
        let spiral = summarium_spiral(m, &ctx).unwrap();
        for p in &spiral.points {
            let v = polar_radius(p.angle, QUADRANT, &ctx).unwrap();
            assert!(
                (p.distance - v).abs() <= 1e-12,
                "m = {m}, angle = {}",
                p.angle
            );
        }
    }
}

#[test]
fn base_crossing_is_limit_of_fitted_sequence() {
    let ctx = native();
    for a in [0.5, 1.0, 3.0] {
        let state = run_iteration(&a, 2, &ctx).unwrap();
        let params = fit(&state.terms()[0], &state.terms()[1], &ctx).unwrap();
        let limit = sequence_limit(&params);
        let crossing = quadrature::quadratrix::base_crossing(2.0 * a);
        assert!((limit - crossing).abs() <= 1e-12 * a.max(1.0));
        assert!((crossing - 4.0 * a / PI).abs() <= 1e-12 * a.max(1.0));
    }
}
