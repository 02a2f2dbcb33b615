//! Precision policy and pole-guarded trigonometry.
//!
//! Every construction in the crate is generic over [`Real`], which is
//! implemented for `f64` (native binary64) and for [`Extended`], a software
//! floating-point type whose precision is chosen through a
//! [`PrecisionContext`].

mod extended;

pub use extended::Extended;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Decimal digits used when extended mode is requested without a digit count.
pub const DEFAULT_EXTENDED_DIGITS: u32 = 40;

/// Smallest digit count accepted for extended mode.
pub const MIN_EXTENDED_DIGITS: u32 = 15;

/// Minimum distance from a tan/cot/sec pole accepted by default.
pub const DEFAULT_POLE_GUARD: f64 = 1e-12;

/// Binary guard bits carried by extended values on top of the requested
/// decimal digits.
const GUARD_BITS: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Native,
    Extended,
}

/// Arithmetic mode and tolerances shared by every numeric operation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionContext {
    mode: Mode,
    decimal_digits: Option<u32>,
    unit_roundoff: f64,
    pole_guard: f64,
}

impl PrecisionContext {
    /// Native binary64 arithmetic.
    pub fn native() -> Self {
        Self {
            mode: Mode::Native,
            decimal_digits: None,
            unit_roundoff: f64::EPSILON / 2.0,
            pole_guard: DEFAULT_POLE_GUARD,
        }
    }

    /// Software arithmetic carrying at least `decimal_digits` significant digits.
    pub fn extended(decimal_digits: u32) -> Result<Self> {
        if decimal_digits < MIN_EXTENDED_DIGITS {
            return Err(Error::InvalidPrecision(format!(
                "extended mode needs at least {MIN_EXTENDED_DIGITS} digits, got {decimal_digits}"
            )));
        }
        // Keep the binary precision well inside what astro-float accepts.
        if decimal_digits > 10_000 {
            return Err(Error::InvalidPrecision(format!(
                "{decimal_digits} digits is beyond the supported range"
            )));
        }
        let unit_roundoff = 10f64.powi(1 - decimal_digits as i32);
        Ok(Self {
            mode: Mode::Extended,
            decimal_digits: Some(decimal_digits),
            unit_roundoff,
            // the binary64 guard would forbid the deep half-angle depths that
            // extended mode exists for
            pole_guard: DEFAULT_POLE_GUARD.min(unit_roundoff.sqrt()),
        })
    }

    pub fn with_pole_guard(mut self, pole_guard: f64) -> Result<Self> {
        if !(pole_guard > 0.0 && pole_guard.is_finite()) {
            return Err(Error::InvalidPrecision(format!(
                "pole guard must be positive and finite, got {pole_guard}"
            )));
        }
        self.pole_guard = pole_guard;
        Ok(self)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn decimal_digits(&self) -> Option<u32> {
        self.decimal_digits
    }

    pub fn unit_roundoff(&self) -> f64 {
        self.unit_roundoff
    }

    pub fn pole_guard(&self) -> f64 {
        self.pole_guard
    }

    /// Mantissa bits used by values created under this context.
    pub fn binary_precision(&self) -> usize {
        match self.decimal_digits {
            None => f64::MANTISSA_DIGITS as usize,
            Some(d) => (d as f64 * std::f64::consts::LOG2_10).ceil() as usize + GUARD_BITS,
        }
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self::native()
    }
}

/// Scalar arithmetic needed by the constructions.
///
/// Constants are materialized through the context so that extended values are
/// created at the requested precision.
pub trait Real:
    Clone
    + fmt::Debug
    + PartialOrd
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(x: f64, ctx: &PrecisionContext) -> Self;
    fn pi(ctx: &PrecisionContext) -> Self;
    fn to_f64(&self) -> f64;
    /// Exact conversion (or rounding, if `self` carries more bits) to an extended value.
    fn to_extended(&self, precision: usize) -> Extended;
    fn sqrt(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn tan(&self) -> Self;
    fn atan(&self) -> Self;
    fn abs(&self) -> Self;
    /// Nearest integer; the tie-breaking rule is backend specific.
    fn round(&self) -> Self;
    /// `self · 2^k`, exact barring overflow.
    fn scale_pow2(&self, k: i32) -> Self;
    fn is_finite(&self) -> bool;

    fn is_positive(&self) -> bool {
        self.to_f64() > 0.0
    }
}

impl Real for f64 {
    fn from_f64(x: f64, _ctx: &PrecisionContext) -> Self {
        x
    }
    fn pi(_ctx: &PrecisionContext) -> Self {
        std::f64::consts::PI
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn to_extended(&self, precision: usize) -> Extended {
        Extended::with_precision(*self, precision.max(f64::MANTISSA_DIGITS as usize))
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn tan(&self) -> Self {
        f64::tan(*self)
    }
    fn atan(&self) -> Self {
        f64::atan(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn round(&self) -> Self {
        f64::round(*self)
    }
    fn scale_pow2(&self, k: i32) -> Self {
        // powi(2, k) is exact for every k in the normal exponent range
        *self * 2f64.powi(k)
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn is_positive(&self) -> bool {
        *self > 0.0
    }
}

/// An angle in radians.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Angle<R = f64>(R);

impl<R: Real> Angle<R> {
    pub fn new(radians: R) -> Self {
        Self(radians)
    }

    pub fn radians(&self) -> &R {
        &self.0
    }

    pub fn into_radians(self) -> R {
        self.0
    }

    /// `angle / 2^k`.
    pub fn halved(&self, k: u32) -> Self {
        Self(self.0.scale_pow2(-(k as i32)))
    }

    pub fn doubled(&self) -> Self {
        Self(self.0.scale_pow2(1))
    }

    /// `π / divisor`.
    pub fn pi_over(divisor: f64, ctx: &PrecisionContext) -> Self {
        Self(R::pi(ctx) / R::from_f64(divisor, ctx))
    }
}

impl From<f64> for Angle<f64> {
    fn from(radians: f64) -> Self {
        Self(radians)
    }
}

/// `sin(x)/x` with the removable singularity at zero filled in.
pub fn sinc<R: Real>(x: &Angle<R>, ctx: &PrecisionContext) -> R {
    let x = x.radians().abs();
    if x.to_f64() < sinc_switch(ctx) {
        let x2 = x.clone() * x;
        let one = R::from_f64(1.0, ctx);
        let c6 = R::from_f64(6.0, ctx);
        let c120 = R::from_f64(120.0, ctx);
        one - x2.clone() / c6 + x2.clone() * x2 / c120
    } else {
        x.sin() / x
    }
}

/// Below this magnitude the truncated series 1 − x²/6 + x⁴/120 is exact to
/// working precision.
fn sinc_switch(ctx: &PrecisionContext) -> f64 {
    match ctx.mode() {
        Mode::Native => 2f64.powi(-26),
        Mode::Extended => 2f64.powi(-((ctx.binary_precision() as i32 + 1) / 2)),
    }
}

/// Distance from `x` to the nearest point of `offset + kπ`.
fn pole_distance<R: Real>(x: &R, offset: R, ctx: &PrecisionContext) -> f64 {
    let pi = R::pi(ctx);
    let shifted = x.clone() - offset;
    let k = (shifted.clone() / pi.clone()).round();
    (shifted - k * pi).abs().to_f64()
}

fn check_pole<R: Real>(
    function: &'static str,
    x: &R,
    offset: R,
    ctx: &PrecisionContext,
) -> Result<()> {
    if !x.is_finite() {
        return Err(Error::Domain(format!("{function} of a non-finite angle")));
    }
    let distance = pole_distance(x, offset, ctx);
    if distance <= ctx.pole_guard() {
        return Err(Error::PoleProximity {
            function,
            angle: x.to_f64(),
            distance,
            guard: ctx.pole_guard(),
        });
    }
    Ok(())
}

fn quarter_pi<R: Real>(ctx: &PrecisionContext) -> R {
    R::pi(ctx).scale_pow2(-2)
}

fn half_pi<R: Real>(ctx: &PrecisionContext) -> R {
    R::pi(ctx).scale_pow2(-1)
}

/// Tangent, refusing angles within the pole guard of π/2 + kπ.
///
/// The working-precision representation of ±π/4 maps to exactly ±1.
pub fn guarded_tan<R: Real>(x: &Angle<R>, ctx: &PrecisionContext) -> Result<R> {
    let x = x.radians();
    check_pole("tan", x, half_pi(ctx), ctx)?;
    let q = quarter_pi::<R>(ctx);
    if *x == q {
        return Ok(R::from_f64(1.0, ctx));
    }
    if *x == -q {
        return Ok(R::from_f64(-1.0, ctx));
    }
    Ok(x.tan())
}

/// Cotangent, refusing angles within the pole guard of kπ.
///
/// The working-precision representations of π/2 and ±π/4 map to exactly 0 and ±1.
pub fn guarded_cot<R: Real>(x: &Angle<R>, ctx: &PrecisionContext) -> Result<R> {
    let x = x.radians();
    check_pole("cot", x, R::from_f64(0.0, ctx), ctx)?;
    let h = half_pi::<R>(ctx);
    if *x == h || *x == -h {
        return Ok(R::from_f64(0.0, ctx));
    }
    let q = quarter_pi::<R>(ctx);
    if *x == q {
        return Ok(R::from_f64(1.0, ctx));
    }
    if *x == -q {
        return Ok(R::from_f64(-1.0, ctx));
    }
    Ok(x.cos() / x.sin())
}

/// Secant, refusing angles within the pole guard of π/2 + kπ.
pub fn guarded_sec<R: Real>(x: &Angle<R>, ctx: &PrecisionContext) -> Result<R> {
    let x = x.radians();
    check_pole("sec", x, half_pi(ctx), ctx)?;
    Ok(R::from_f64(1.0, ctx) / x.cos())
}

/// Cosecant, refusing angles within the pole guard of kπ.
pub fn guarded_csc<R: Real>(x: &Angle<R>, ctx: &PrecisionContext) -> Result<R> {
    let x = x.radians();
    check_pole("csc", x, R::from_f64(0.0, ctx), ctx)?;
    Ok(R::from_f64(1.0, ctx) / x.sin())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn ctx() -> PrecisionContext {
        PrecisionContext::native()
    }

    #[test]
    fn sinc_examples() {
        assert_eq!(sinc(&Angle::new(0.0), &ctx()), 1.0);
        assert!((sinc(&Angle::new(FRAC_PI_2), &ctx()) - 0.63661977236758).abs() < 1e-14);
        assert!(sinc(&Angle::new(PI), &ctx()).abs() < 1e-16);
    }

    #[test]
    fn sinc_series_branch_matches_quotient() {
        let u = ctx().unit_roundoff();
        for &x in &[
            1e-300,
            1e-20,
            1e-9,
            2f64.powi(-27),
            2f64.powi(-26),
            1e-5,
            9.9e-4,
        ] {
            let s = sinc(&Angle::new(x), &ctx());
            assert!((s - x.sin() / x).abs() <= 4.0 * u, "x = {x}");
            assert_eq!(s, sinc(&Angle::new(-x), &ctx()));
        }
    }

    #[test]
    fn exact_special_values() {
        assert_eq!(guarded_tan(&Angle::new(FRAC_PI_4), &ctx()).unwrap(), 1.0);
        assert_eq!(guarded_cot(&Angle::new(FRAC_PI_2), &ctx()).unwrap(), 0.0);
        assert_eq!(guarded_cot(&Angle::new(FRAC_PI_4), &ctx()).unwrap(), 1.0);
        let sec = guarded_sec(&Angle::new(FRAC_PI_4), &ctx()).unwrap();
        assert!((sec - 1.41421356237310).abs() < 1e-14);
    }

    #[test]
    fn poles_are_rejected() {
        let err = guarded_tan(&Angle::new(FRAC_PI_2), &ctx()).unwrap_err();
        assert!(matches!(
            err,
            Error::PoleProximity {
                function: "tan",
                ..
            }
        ));
        assert!(guarded_cot(&Angle::new(0.0), &ctx()).is_err());
        assert!(guarded_cot(&Angle::new(PI), &ctx()).is_err());
        assert!(guarded_sec(&Angle::new(-FRAC_PI_2), &ctx()).is_err());
        assert!(guarded_cot(&Angle::new(5e-13), &ctx()).is_err());
        assert!(guarded_cot(&Angle::new(2e-12), &ctx()).is_ok());
        assert!(guarded_tan(&Angle::new(f64::NAN), &ctx()).is_err());
    }

    #[test]
    fn context_validation() {
        assert!(PrecisionContext::extended(14).is_err());
        let ext = PrecisionContext::extended(30).unwrap();
        assert_eq!(ext.mode(), Mode::Extended);
        assert!((ext.unit_roundoff() - 1e-29).abs() < 1e-43);
        assert!(ext.binary_precision() >= 100);
        assert!(ctx().with_pole_guard(0.0).is_err());
        assert!(ctx().with_pole_guard(-1.0).is_err());
        assert_eq!(ctx().with_pole_guard(1e-9).unwrap().pole_guard(), 1e-9);
        assert_eq!(ctx().unit_roundoff(), 2f64.powi(-53));
        assert_eq!(ctx().pole_guard(), DEFAULT_POLE_GUARD);
        assert_eq!(
            PrecisionContext::extended(15).unwrap().pole_guard(),
            DEFAULT_POLE_GUARD
        );
        assert!((ext.pole_guard() - 10f64.powf(-14.5)).abs() < 1e-20);
    }

    #[test]
    fn extended_special_values() {
        let ext = PrecisionContext::extended(40).unwrap();
        let q = Angle::<Extended>::pi_over(4.0, &ext);
        assert_eq!(guarded_tan(&q, &ext).unwrap().to_f64(), 1.0);
        assert_eq!(guarded_cot(&q.doubled(), &ext).unwrap().to_f64(), 0.0);
        let s = sinc(&Angle::<Extended>::pi_over(2.0, &ext), &ext);
        assert!((s.to_f64() - 2.0 / PI).abs() < 1e-16);
    }
}
