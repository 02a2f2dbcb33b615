//! Named invariant suites run by `quadrature verify`.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
use std::fmt;

use clap::ValueEnum;

use super::erratum::erratum_report;
use crate::error::Result;
use crate::identities::{
    cos_product, half_angle_cos_series, quadrant_secant_product, sec2_series, tan_series,
    tan_series_limit, Depth,
};
use crate::numerics::{Angle, Extended, PrecisionContext, Real};
use crate::quadratrix::{
    base_crossing, membership, polar_radius, polar_to_cartesian, summarium_spiral, QuadratrixPolar,
    QUADRANT,
};
use crate::sequences::{
    closed_form_term, fit, generate, rectangle_products, run_iteration, trig_step, PolygonStep,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Telescope,
    Products,
    Quadratrix,
    Fit,
    Erratum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    AtMost,
    AtLeast,
}

/// One measured quantity against its threshold.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub value: f64,
    pub threshold: f64,
    pub bound: Bound,
}

impl Check {
    fn at_most(name: &'static str, value: f64, threshold: f64) -> Self {
        Self {
            name,
            value,
            threshold,
            bound: Bound::AtMost,
        }
    }

    fn at_least(name: &'static str, value: f64, threshold: f64) -> Self {
        Self {
            name,
            value,
            threshold,
            bound: Bound::AtLeast,
        }
    }

    pub fn passed(&self) -> bool {
        match self.bound {
            Bound::AtMost => self.value <= self.threshold,
            Bound::AtLeast => self.value >= self.threshold,
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.bound {
            Bound::AtMost => "<=",
            Bound::AtLeast => ">=",
        };
        write!(
            f,
            "{} {} {} {} {}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            super::format::sig15(self.value),
            op,
            super::format::sig15(self.threshold)
        )
    }
}

/// `φ = 0.1, 0.2, …, 1.5`.
pub fn phi_grid() -> Vec<f64> {
    (1..=15).map(|k| k as f64 / 10.0).collect()
}

fn worst(values: impl IntoIterator<Item = Result<f64>>) -> Result<f64> {
    let mut max = 0.0f64;
    for v in values {
        max = max.max(v?);
    }
    Ok(max)
}

fn grid_depths(max_depth: u32) -> impl Iterator<Item = (f64, u32)> {
    phi_grid()
        .into_iter()
        .flat_map(move |phi| (0..=max_depth).map(move |m| (phi, m)))
}

fn telescope(ctx: &PrecisionContext) -> Result<Vec<Check>> {
    let tan_residual = worst(grid_depths(20).map(|(phi, m)| {
        let s = tan_series(&Angle::new(phi), Depth::Finite(m), ctx)?;
        Ok(*s.residual().expect("finite depth"))
    }))?;
    let limit = tan_series_limit(&Angle::new(FRAC_PI_4), ctx)?;
    let sec2_residual = worst(grid_depths(20).map(|(phi, m)| {
        let s = sec2_series(&Angle::new(phi), Depth::Finite(m), ctx)?;
        Ok(*s.residual().expect("finite depth"))
    }))?;
    // the half-angle series is half the sec² series at φ/2
    let half_angle =
        worst(grid_depths(20).map(|(phi, m)| {
            let h = half_angle_cos_series(&Angle::new(phi), Depth::Finite(m), ctx)?;
            let s = sec2_series(&Angle::new(phi / 2.0), Depth::Finite(m), ctx)?;
            Ok((h.series.termwise().expect("finite depth")
                - 0.5 * s.termwise().expect("finite depth"))
            .abs())
        }))?;
    // sec² partial sums are the derivative of the tangent partial sums
    let derivative = worst(grid_depths(20).map(|(phi, m)| {
        let step = 1e-6;
        let up = tan_series(&Angle::new(phi + step), Depth::Finite(m), ctx)?;
        let down = tan_series(&Angle::new(phi - step), Depth::Finite(m), ctx)?;
        let slope = (up.closed() - down.closed()) / (2.0 * step);
        let s = sec2_series(&Angle::new(phi), Depth::Finite(m), ctx)?;
        Ok((slope - s.closed()).abs() / s.closed().abs().max(1.0))
    }))?;
    // bridge to the apposition terms: tan series at π/4 is t_m
    let bridge = worst((0..=25).map(|m| {
        let s = tan_series(&Angle::new(FRAC_PI_4), Depth::Finite(m), ctx)?;
        let t = closed_form_term(m, &1.0, ctx)?;
        Ok((s.closed() - t).abs())
    }))?;
    let ectx = PrecisionContext::extended(40)?;
    let extended_limit = worst(phi_grid().into_iter().map(|phi| {
        let angle = Angle::new(Extended::from_f64(phi, &ectx));
        let s = tan_series(&angle, Depth::Finite(40), &ectx)?;
        let l = tan_series_limit(&angle, &ectx)?;
        Ok((s.termwise().expect("finite depth").clone() - l)
            .abs()
            .to_f64())
    }))?;
    Ok(vec![
        Check::at_most("tan_series residual, grid x m<=20", tan_residual, 1e-12),
        Check::at_most(
            "tan_series_limit(pi/4) - 4/pi",
            (limit - 4.0 / PI).abs(),
            1e-14,
        ),
        Check::at_most("sec2_series residual, grid x m<=20", sec2_residual, 1e-12),
        Check::at_most(
            "half-angle series - sec2_series(phi/2)/2",
            half_angle,
            1e-13,
        ),
        Check::at_most(
            "central difference of tan partials vs sec2 partials",
            derivative,
            1e-5,
        ),
        Check::at_most(
            "tan_series(pi/4) partials vs cotangent terms",
            bridge,
            1e-13,
        ),
        Check::at_most("extended tan_series(m=40) vs limit", extended_limit, 1e-18),
    ])
}

fn products(ctx: &PrecisionContext) -> Result<Vec<Check>> {
    let cos_residual = worst(grid_depths(25).map(|(phi, m)| {
        let p = cos_product(&Angle::new(phi), Depth::Finite(m), ctx)?;
        Ok(*p.residual().expect("finite depth"))
    }))?;
    let secant = quadrant_secant_product::<f64>(Depth::Finite(20), ctx)?;
    let secant_residual = worst((1..=25).map(|m| {
        let p = quadrant_secant_product::<f64>(Depth::Finite(m), ctx)?;
        Ok(*p.residual().expect("finite depth"))
    }))?;
    Ok(vec![
        Check::at_most("cos_product residual, grid x m<=25", cos_residual, 1e-13),
        Check::at_most(
            "quadrant_secant_product(20) - pi/2",
            (secant.termwise().expect("finite depth") - FRAC_PI_2).abs(),
            1e-11,
        ),
        Check::at_most(
            "quadrant_secant_product residual, m<=25",
            secant_residual,
            1e-13,
        ),
    ])
}

fn quadratrix(ctx: &PrecisionContext) -> Result<Vec<Check>> {
    let a = 1.0;
    let h = 2.0 * a;
    let state = run_iteration(&a, 20, ctx)?;
    let tol = 1e-10;
    let mut misses = 0.0;
    for (k, &t) in state.terms().iter().enumerate() {
        let y = a * 0.5f64.powi(k as i32);
        if !membership(t, y, h, tol, ctx)? {
            misses += 1.0;
        }
    }
    let spiral = summarium_spiral(20, ctx)?;
    let on_curve = worst(
        spiral
            .points
            .iter()
            .map(|p| Ok((p.distance - polar_radius(p.angle, QUADRANT, ctx)?).abs())),
    )?;
    let inversion = worst((1..40).map(|i| {
        let p = QuadratrixPolar::at(QUADRANT * i as f64 / 40.0, QUADRANT, ctx)?;
        let c = polar_to_cartesian(&p, h)?;
        Ok((c.x - crate::quadratrix::cartesian_x(c.y, h, ctx)?).abs())
    }))?;
    Ok(vec![
        Check::at_most(
            "apposition points off the quadratrix (tol 1e-10)",
            misses,
            0.0,
        ),
        Check::at_most("spiral distance - polar radius", on_curve, 1e-12),
        Check::at_most(
            "base crossing - 4a/pi",
            (base_crossing(h) - 4.0 * a / PI).abs(),
            1e-12,
        ),
        Check::at_most(
            "inverted polar curve off the Cartesian curve",
            inversion,
            1e-12,
        ),
    ])
}

/// Depth up to which binary64 products are compared.
const NATIVE_RATIO_DEPTH: usize = 6;

fn fit_suite(ctx: &PrecisionContext) -> Result<Vec<Check>> {
    // a grid of admissible (φ, r) pairs
    let mut round_trip = 0.0f64;
    let mut quadruple = 0.0f64;
    for i in 1..=5 {
        for j in 1..=4 {
            let phi = 0.3 * i as f64;
            let r = 0.5 * j as f64;
            let terms = {
                let params = crate::sequences::FitParams::new(Angle::new(phi), r, ctx)?;
                generate(&params, 12, ctx)?
            };
            let back = fit(&terms[0], &terms[1], ctx)?;
            round_trip = round_trip
                .max((back.phi().radians() - phi).abs() / phi)
                .max((back.r() - r).abs() / r);
            // t_{k+1} − t_k cancels about 4^k ulps, so binary64 only sees
            // the ratio cleanly for the first few products
            let products = rectangle_products(&terms[..=NATIVE_RATIO_DEPTH]);
            for w in products.windows(2) {
                quadruple = quadruple.max((w[1] / w[0] - 0.25).abs());
            }
        }
    }
    let ectx = PrecisionContext::extended(40)?;
    let mut quadruple_extended = 0.0f64;
    for phi in [0.3, 0.9, 1.5] {
        let params = crate::sequences::FitParams::new(
            Angle::new(Extended::from_f64(phi, &ectx)),
            Extended::from_f64(1.5, &ectx),
            &ectx,
        )?;
        let products = rectangle_products(&generate(&params, 20, &ectx)?);
        for w in products.windows(2) {
            let ratio = w[1].clone() / w[0].clone();
            quadruple_extended = quadruple_extended.max((ratio.to_f64() - 0.25).abs());
        }
    }
    let mut oracle = 0.0f64;
    let state = run_iteration(&1.0, 25, ctx)?;
    let mut step = PolygonStep::new(4, 1.0, ctx)?;
    for k in 0..=25u32 {
        let closed = closed_form_term(k, &1.0, ctx)?;
        if k > 0 {
            step = trig_step(&step, ctx)?;
        }
        let radical = state
            .terms()
            .get(k as usize)
            .copied()
            .unwrap_or(*state.last_term());
        let trig = *step.apothem_r();
        oracle = oracle
            .max((radical - closed).abs() / closed)
            .max((trig - closed).abs() / closed)
            .max((radical - trig).abs() / closed);
    }
    let ratios = {
        let report = super::report::build_report(15, ctx)?;
        report
            .rows_for(super::report::Method::Radical)
            .filter(|r| (5..=15).contains(&r.m))
            .map(|r| (r.error_ratio.unwrap_or(f64::INFINITY) - 0.25).abs())
            .fold(0.0, f64::max)
    };
    Ok(vec![
        Check::at_most("fit(generate(phi, r)) relative error", round_trip, 1e-12),
        Check::at_most("quadruple ratio - 1/4, k<=6", quadruple, 1e-10),
        Check::at_most(
            "extended quadruple ratio - 1/4, k<=20",
            quadruple_extended,
            1e-10,
        ),
        Check::at_most(
            "radical / cotangent / trig_step disagreement, k<=25",
            oracle,
            1e-13,
        ),
        Check::at_most("radical error ratio - 1/4, 5<=m<=15", ratios, 0.02),
    ])
}

fn erratum() -> Result<Vec<Check>> {
    let report = erratum_report(&phi_grid())?;
    Ok(vec![
        Check::at_most(
            "corrected closed form residual",
            report.max_corrected_residual(),
            1e-10,
        ),
        Check::at_least(
            "printed closed form residual",
            report.min_printed_residual(),
            0.1,
        ),
    ])
}

/// Runs one suite. `tol`, when given, replaces every upper threshold.
pub fn run_suite(suite: Suite, tol: Option<f64>) -> Result<Vec<Check>> {
    let ctx = PrecisionContext::native();
    let mut checks = match suite {
        Suite::Telescope => telescope(&ctx)?,
        Suite::Products => products(&ctx)?,
        Suite::Quadratrix => quadratrix(&ctx)?,
        Suite::Fit => fit_suite(&ctx)?,
        Suite::Erratum => erratum()?,
    };
    if let Some(tol) = tol {
        for c in checks.iter_mut().filter(|c| c.bound == Bound::AtMost) {
            c.threshold = tol;
        }
    }
    Ok(checks)
}
