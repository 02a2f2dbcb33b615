//! The telescoping tangent series and the series and products derived from it.
//!
//! Everything rests on `tan θ = cot θ − 2 cot 2θ`, which collapses
//!
//! ```text
//! Σ_{k=0..m} 2^(−k) tan(φ/2^k) = 2^(−m) cot(φ/2^m) − 2 cot 2φ
//! ```
//!
//! Differentiating gives the sec² series, halving its angle gives the
//! `1/(1 + cos)` series, and integrating gives the cosine product.
//!
//! Term-wise values are summed from the smallest term up. Infinite depths use
//! the closed-form limits only.

use crate::error::{Error, Result};
use crate::numerics::{
    guarded_cot, guarded_csc, guarded_sec, guarded_tan, sinc, Angle, PrecisionContext, Real,
};

/// How many terms of a series or factors of a product to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Depth {
    /// Terms `0..=m` (or `1..=m` for the quadrant secant product).
    Finite(u32),
    /// The closed-form limit.
    Infinite,
}

impl From<u32> for Depth {
    fn from(m: u32) -> Self {
        Depth::Finite(m)
    }
}

/// A term-wise evaluation next to its closed form.
///
/// At [`Depth::Infinite`] there is no term-wise value; `closed` holds the limit.
#[derive(Debug, Clone, PartialEq)]
pub struct Partial<R = f64> {
    phi: Angle<R>,
    depth: Depth,
    termwise: Option<R>,
    closed: R,
    residual: Option<R>,
}

pub type SeriesPartial<R = f64> = Partial<R>;
pub type ProductPartial<R = f64> = Partial<R>;

impl<R: Real> Partial<R> {
    fn finite(phi: Angle<R>, m: u32, termwise: R, closed: R) -> Self {
        let residual = (termwise.clone() - closed.clone()).abs();
        Self {
            phi,
            depth: Depth::Finite(m),
            termwise: Some(termwise),
            closed,
            residual: Some(residual),
        }
    }

    fn limit(phi: Angle<R>, closed: R) -> Self {
        Self {
            phi,
            depth: Depth::Infinite,
            termwise: None,
            closed,
            residual: None,
        }
    }

    pub fn phi(&self) -> &Angle<R> {
        &self.phi
    }

    pub fn depth(&self) -> Depth {
        self.depth
    }

    pub fn termwise(&self) -> Option<&R> {
        self.termwise.as_ref()
    }

    pub fn closed(&self) -> &R {
        &self.closed
    }

    /// `|termwise − closed|`.
    pub fn residual(&self) -> Option<&R> {
        self.residual.as_ref()
    }
}

fn check_open_quarter<R: Real>(phi: &Angle<R>) -> Result<()> {
    let x = phi.radians().to_f64();
    if x > 0.0 && x < std::f64::consts::FRAC_PI_2 {
        Ok(())
    } else {
        Err(Error::Domain(format!("φ = {x} must lie in (0, π/2)")))
    }
}

fn one<R: Real>(ctx: &PrecisionContext) -> R {
    R::from_f64(1.0, ctx)
}

/// Sums `term(k)` for `k = m, m−1, …, 0`.
fn sum_down<R: Real>(m: u32, mut term: impl FnMut(u32) -> Result<R>) -> Result<R> {
    let mut acc = term(m)?;
    for k in (0..m).rev() {
        acc = acc + term(k)?;
    }
    Ok(acc)
}

/// `2^(−k) tan(φ/2^k)` summed over `k ≤ m`, against `2^(−m) cot(φ/2^m) − 2 cot 2φ`.
pub fn tan_series<R: Real>(
    phi: &Angle<R>,
    depth: Depth,
    ctx: &PrecisionContext,
) -> Result<SeriesPartial<R>> {
    check_open_quarter(phi)?;
    let m = match depth {
        Depth::Infinite => return Ok(Partial::limit(phi.clone(), tan_series_limit(phi, ctx)?)),
        Depth::Finite(m) => m,
    };
    let termwise = sum_down(m, |k| {
        Ok(guarded_tan(&phi.halved(k), ctx)?.scale_pow2(-(k as i32)))
    })?;
    let head = guarded_cot(&phi.halved(m), ctx)?.scale_pow2(-(m as i32));
    let closed = head - guarded_cot(&phi.doubled(), ctx)?.scale_pow2(1);
    Ok(Partial::finite(phi.clone(), m, termwise, closed))
}

/// `1/φ − 2 cot 2φ`.
///
/// For small φ the difference cancels, so the Laurent expansion
/// `4φ/3 + 16φ³/45 + 128φ⁵/945 + 512φ⁷/4725` is used instead.
pub fn tan_series_limit<R: Real>(phi: &Angle<R>, ctx: &PrecisionContext) -> Result<R> {
    check_open_quarter(phi)?;
    let x = phi.radians().clone();
    // truncation error ≈ 2^10 φ^9 / 93555 relative to 4φ/3
    let switch = (64.0 * ctx.unit_roundoff()).powf(0.125);
    if x.to_f64() < switch {
        let x2 = x.clone() * x.clone();
        let c = |n: f64, d: f64| R::from_f64(n, ctx) / R::from_f64(d, ctx);
        let poly = c(4.0, 3.0)
            + x2.clone() * (c(16.0, 45.0) + x2.clone() * (c(128.0, 945.0) + x2 * c(512.0, 4725.0)));
        return Ok(x * poly);
    }
    Ok(one::<R>(ctx) / x - guarded_cot(&phi.doubled(), ctx)?.scale_pow2(1))
}

/// `4^(−k) sec²(φ/2^k)` summed over `k ≤ m`, against
/// `4/sin² 2φ − 4^(−m)/sin²(φ/2^m)`; the limit is `1/(sin²φ cos²φ) − 1/φ²`.
pub fn sec2_series<R: Real>(
    phi: &Angle<R>,
    depth: Depth,
    ctx: &PrecisionContext,
) -> Result<SeriesPartial<R>> {
    check_open_quarter(phi)?;
    let x = phi.radians().clone();
    let m = match depth {
        Depth::Infinite => {
            let sec = guarded_sec(phi, ctx)?;
            let csc = guarded_csc(phi, ctx)?;
            let sq = |v: R| v.clone() * v;
            let limit = sq(sec * csc) - one::<R>(ctx) / sq(x);
            return Ok(Partial::limit(phi.clone(), limit));
        }
        Depth::Finite(m) => m,
    };
    let termwise = sum_down(m, |k| {
        let s = guarded_sec(&phi.halved(k), ctx)?;
        Ok((s.clone() * s).scale_pow2(-2 * k as i32))
    })?;
    let c2 = guarded_csc(&phi.doubled(), ctx)?;
    let cm = guarded_csc(&phi.halved(m), ctx)?;
    let closed = (c2.clone() * c2).scale_pow2(2) - (cm.clone() * cm).scale_pow2(-2 * m as i32);
    Ok(Partial::finite(phi.clone(), m, termwise, closed))
}

/// The `1/(1 + cos)` series with both candidate limits.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfAngleSeries<R = f64> {
    /// Term-wise sum against the corrected closed form.
    pub series: SeriesPartial<R>,
    /// `4/(1 − cos 2φ) − 2/φ²`, the limit consistent with the terms.
    pub corrected_limit: R,
    /// `2/(1 − cos 2φ) − 2/φ²`, the variant with 2 in place of 4; it does
    /// not match the terms.
    pub printed_limit: R,
}

/// `4^(−k)/(1 + cos(φ/2^k))` summed over `k ≤ m`.
///
/// Each term is `½ sec²(φ/2^(k+1)) · 4^(−k)`, so the finite closed form is
/// `2/sin²φ − 4^(−m)/(2 sin²(φ/2^(m+1)))` and the limit `2/sin²φ − 2/φ²`.
pub fn half_angle_cos_series<R: Real>(
    phi: &Angle<R>,
    depth: Depth,
    ctx: &PrecisionContext,
) -> Result<HalfAngleSeries<R>> {
    check_open_quarter(phi)?;
    let x = phi.radians().clone();
    let x2 = x.clone() * x.clone();
    let two = R::from_f64(2.0, ctx);
    let csc = guarded_csc(phi, ctx)?;
    let corrected_limit = (csc.clone() * csc.clone()).scale_pow2(1) - two.clone() / x2.clone();
    let one_minus_cos2 = one::<R>(ctx) - phi.doubled().radians().cos();
    let printed_limit = two.clone() / one_minus_cos2 - two / x2;

    let series = match depth {
        Depth::Infinite => Partial::limit(phi.clone(), corrected_limit.clone()),
        Depth::Finite(m) => {
            let termwise = sum_down(m, |k| {
                let c = phi.halved(k).radians().cos();
                Ok((one::<R>(ctx) / (one::<R>(ctx) + c)).scale_pow2(-2 * k as i32))
            })?;
            let cm = guarded_csc(&phi.halved(m + 1), ctx)?;
            let tail = (cm.clone() * cm).scale_pow2(-2 * m as i32 - 1);
            let closed = (csc.clone() * csc).scale_pow2(1) - tail;
            Partial::finite(phi.clone(), m, termwise, closed)
        }
    };
    Ok(HalfAngleSeries {
        series,
        corrected_limit,
        printed_limit,
    })
}

/// `Π_{k=0..m} cos(φ/2^k)` against `sin 2φ / (2^(m+1) sin(φ/2^m))`; the limit
/// is `sin 2φ / 2φ`.
pub fn cos_product<R: Real>(
    phi: &Angle<R>,
    depth: Depth,
    ctx: &PrecisionContext,
) -> Result<ProductPartial<R>> {
    check_open_quarter(phi)?;
    let m = match depth {
        Depth::Infinite => return Ok(Partial::limit(phi.clone(), sinc(&phi.doubled(), ctx))),
        Depth::Finite(m) => m,
    };
    let mut termwise = one::<R>(ctx);
    for k in (0..=m).rev() {
        termwise = termwise * phi.halved(k).radians().cos();
    }
    let csc = guarded_csc(&phi.halved(m), ctx)?;
    let closed = (phi.doubled().radians().sin() * csc).scale_pow2(-(m as i32) - 1);
    Ok(Partial::finite(phi.clone(), m, termwise, closed))
}

/// `Π_{k=1..m} sec(q/2^k)` with `q = π/2`, against `2^m sin(π/2^(m+1))`; the
/// limit is `π/2`.
pub fn quadrant_secant_product<R: Real>(
    depth: Depth,
    ctx: &PrecisionContext,
) -> Result<ProductPartial<R>> {
    let q = Angle::new(R::pi(ctx).scale_pow2(-1));
    let m = match depth {
        Depth::Infinite => return Ok(Partial::limit(q.clone(), q.into_radians())),
        Depth::Finite(0) => return Err(Error::Domain("the secant product starts at m = 1".into())),
        Depth::Finite(m) => m,
    };
    let mut termwise = one::<R>(ctx);
    for k in (1..=m).rev() {
        termwise = termwise * guarded_sec(&q.halved(k), ctx)?;
    }
    let closed = q.halved(m).radians().sin().scale_pow2(m as i32);
    Ok(Partial::finite(q, m, termwise, closed))
}
