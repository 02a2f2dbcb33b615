//! The rectangle-apposition iteration and its equivalents.
//!
//! Starting from the square of half-side `a`, each appended rectangle has one
//! quarter of the previous area and its top-right corner on the extended
//! diagonal. The abscissae `t₀ = a, t₁, t₂, …` are also the apothems of
//! equal-perimeter circumscribed polygons with 4, 8, 16, … sides, so
//!
//! ```text
//! t_k = a · 2^(−k) · cot(π / 2^(k+2))  →  4a/π.
//! ```
//!
//! The general family with the same "quadruple ratio" property is
//! parametrized by [`FitParams`].

use crate::error::{Error, Result};
use crate::numerics::{guarded_cot, guarded_tan, Angle, PrecisionContext, Real};

fn require_positive<R: Real>(name: &'static str, value: &R) -> Result<()> {
    if value.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositiveInput {
            name,
            value: value.to_f64(),
        })
    }
}

fn lit<R: Real>(x: f64, ctx: &PrecisionContext) -> R {
    R::from_f64(x, ctx)
}

/// The scale `a`, the abscissae `t₀..t_m` and the rectangle areas `Q₁..Q_m`.
#[derive(Debug, Clone, PartialEq)]
pub struct DescartesState<R = f64> {
    scale_a: R,
    terms: Vec<R>,
    areas: Vec<R>,
    requested_depth: usize,
}

impl<R: Real> DescartesState<R> {
    pub fn scale_a(&self) -> &R {
        &self.scale_a
    }

    /// `t₀ = a, t₁, …, t_m`.
    pub fn terms(&self) -> &[R] {
        &self.terms
    }

    /// `Q₁ = a²/4, Q₂, …, Q_m`; `areas()[k-1]` is the rectangle ending at `t_k`.
    pub fn areas(&self) -> &[R] {
        &self.areas
    }

    /// Number of steps actually applied.
    pub fn depth(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn requested_depth(&self) -> usize {
        self.requested_depth
    }

    /// True when the iteration stopped before the requested depth because
    /// the step fell below working precision.
    pub fn stopped_early(&self) -> bool {
        self.depth() < self.requested_depth
    }

    pub fn last_term(&self) -> &R {
        self.terms.last().expect("terms always holds t0")
    }
}

/// One apposition step.
///
/// Given the current abscissa `t` and the area `Q` of the rectangle to be
/// appended, returns the next abscissa `t'` solving `t'(t' − t) = Q` together
/// with the area `Q/4` of the rectangle after it.
pub fn step_radical<R: Real>(t_prev: &R, area: &R, ctx: &PrecisionContext) -> Result<(R, R)> {
    require_positive("t", t_prev)?;
    if !area.is_finite() || area.to_f64() < 0.0 {
        return Err(Error::NonPositiveInput {
            name: "rectangle area",
            value: area.to_f64(),
        });
    }
    let radicand = t_prev.clone() * t_prev.clone() + area.scale_pow2(2);
    let next = (t_prev.clone() + radicand.sqrt()) * lit(0.5, ctx);
    Ok((next, area.scale_pow2(-2)))
}

/// The two-term form of the recurrence: `c = (b + √(2b² − ab))/2`.
///
/// `2b² − ab` is evaluated as `b(2b − a)`.
pub fn step_two_term<R: Real>(prev: &R, current: &R) -> Result<R> {
    require_positive("a", prev)?;
    if current.partial_cmp(prev) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::DegenerateSequence {
            a: prev.to_f64(),
            b: current.to_f64(),
        });
    }
    let radicand = current.clone() * (current.scale_pow2(1) - prev.clone());
    Ok((current.clone() + radicand.sqrt()).scale_pow2(-1))
}

/// Applies up to `m` apposition steps starting from the square of half-side `a`.
///
/// Stops early once a step no longer changes the abscissa by more than one
/// unit roundoff; the reached depth is recorded in the state.
pub fn run_iteration<R: Real>(
    a: &R,
    m: usize,
    ctx: &PrecisionContext,
) -> Result<DescartesState<R>> {
    require_positive("a", a)?;
    let u = lit::<R>(ctx.unit_roundoff(), ctx);
    let mut terms = Vec::with_capacity(m + 1);
    let mut areas = Vec::with_capacity(m);
    terms.push(a.clone());
    let mut area = (a.clone() * a.clone()).scale_pow2(-2);
    for _ in 0..m {
        let t = terms.last().expect("non-empty").clone();
        let (next, next_area) = step_radical(&t, &area, ctx)?;
        if (next.clone() - t.clone()) < u.clone() * t {
            break;
        }
        terms.push(next);
        areas.push(area);
        area = next_area;
    }
    Ok(DescartesState {
        scale_a: a.clone(),
        terms,
        areas,
        requested_depth: m,
    })
}

/// `t_k = a · 2^(−k) · cot(π / 2^(k+2))`.
pub fn closed_form_term<R: Real>(k: u32, a: &R, ctx: &PrecisionContext) -> Result<R> {
    require_positive("a", a)?;
    let angle = Angle::new(R::pi(ctx)).halved(k + 2);
    Ok(a.scale_pow2(-(k as i32)) * guarded_cot(&angle, ctx)?)
}

/// A regular polygon circumscribed about a circle: side count, apothem
/// (the circle's radius) and half the side length.
#[derive(Debug, Clone, PartialEq)]
pub struct PolygonStep<R = f64> {
    sides_n: u64,
    apothem_r: R,
    half_side: R,
}

impl<R: Real> PolygonStep<R> {
    pub fn new(sides_n: u64, apothem_r: R, ctx: &PrecisionContext) -> Result<Self> {
        if sides_n < 3 {
            return Err(Error::Domain(format!(
                "a polygon needs at least 3 sides, got {sides_n}"
            )));
        }
        require_positive("apothem", &apothem_r)?;
        let angle = Angle::<R>::pi_over(sides_n as f64, ctx);
        let half_side = apothem_r.clone() * guarded_tan(&angle, ctx)?;
        Ok(Self {
            sides_n,
            apothem_r,
            half_side,
        })
    }

    pub fn sides_n(&self) -> u64 {
        self.sides_n
    }

    pub fn apothem_r(&self) -> &R {
        &self.apothem_r
    }

    pub fn half_side(&self) -> &R {
        &self.half_side
    }
}

/// Doubles the side count while preserving the perimeter:
/// `s = ½ · r · tan(π/n) · cot(π/2n)`.
pub fn trig_step<R: Real>(step: &PolygonStep<R>, ctx: &PrecisionContext) -> Result<PolygonStep<R>> {
    let sides_n = step
        .sides_n
        .checked_mul(2)
        .ok_or_else(|| Error::Domain(format!("side count {} cannot be doubled", step.sides_n)))?;
    let angle = Angle::<R>::pi_over(step.sides_n as f64, ctx);
    let tan = guarded_tan(&angle, ctx)?;
    let cot_half = guarded_cot(&angle.halved(1), ctx)?;
    let apothem_r = (step.apothem_r.clone() * tan * cot_half).scale_pow2(-1);
    Ok(PolygonStep {
        sides_n,
        apothem_r,
        half_side: step.half_side.scale_pow2(-1),
    })
}

/// A π estimate with its leading-order error model.
#[derive(Debug, Clone, PartialEq)]
pub struct PiEstimate<R = f64> {
    pub estimate: R,
    /// `π³ / (48 · 4^m)`, the first term of the cotangent expansion of the
    /// error. A model, not a certified bound.
    pub error_bound: f64,
}

/// Leading-order error of `4a/t_m` as an estimate of π.
pub fn error_model(m: usize) -> f64 {
    std::f64::consts::PI.powi(3) / 48.0 * 0.25f64.powi(m as i32)
}

/// `π ≈ 4a / t_m`.
pub fn estimate_pi<R: Real>(state: &DescartesState<R>) -> Result<PiEstimate<R>> {
    if state.depth() == 0 {
        return Err(Error::Domain("estimating π needs at least one step".into()));
    }
    let estimate = state.scale_a.scale_pow2(2) / state.last_term().clone();
    Ok(PiEstimate {
        estimate,
        error_bound: error_model(state.depth()),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct AreaSum<R = f64> {
    /// `Q₁ + … + Q_m = a²(1 − 4^(−m))/3`.
    pub partial: R,
    /// `a²/3`.
    pub limit: R,
}

pub fn rectangle_area_sum<R: Real>(
    state: &DescartesState<R>,
    ctx: &PrecisionContext,
) -> Result<AreaSum<R>> {
    if state.depth() == 0 {
        return Err(Error::Domain("no rectangles have been appended".into()));
    }
    let partial = state
        .areas
        .iter()
        .rev()
        .cloned()
        .reduce(|acc, q| acc + q)
        .expect("depth >= 1");
    let limit = state.scale_a.clone() * state.scale_a.clone() / lit(3.0, ctx);
    Ok(AreaSum { partial, limit })
}

/// The angle/scale pair generating `t_k = r · 2^(−k) · cot(φ/2^k)`.
#[derive(Debug, Clone, PartialEq)]
pub struct FitParams<R = f64> {
    phi: Angle<R>,
    r: R,
}

impl<R: Real> FitParams<R> {
    pub fn new(phi: Angle<R>, r: R, ctx: &PrecisionContext) -> Result<Self> {
        require_positive("r", &r)?;
        let x = phi.radians().to_f64();
        let guard = ctx.pole_guard();
        if !(x > guard && x < std::f64::consts::FRAC_PI_2 - guard) {
            return Err(Error::Domain(format!(
                "φ = {x} must lie in (0, π/2) at least {guard:e} from either end"
            )));
        }
        Ok(Self { phi, r })
    }

    pub fn phi(&self) -> &Angle<R> {
        &self.phi
    }

    pub fn r(&self) -> &R {
        &self.r
    }
}

/// Recovers `(φ, r)` from the first two terms:
/// `tan φ = 2√(b² − ab)/a`, `r = 2√(b² − ab)`.
pub fn fit<R: Real>(a: &R, b: &R, ctx: &PrecisionContext) -> Result<FitParams<R>> {
    require_positive("a", a)?;
    if b.partial_cmp(a) != Some(std::cmp::Ordering::Greater) {
        return Err(Error::DegenerateSequence {
            a: a.to_f64(),
            b: b.to_f64(),
        });
    }
    let r = (b.clone() * (b.clone() - a.clone())).sqrt().scale_pow2(1);
    let phi = (r.clone() / a.clone()).atan();
    FitParams::new(Angle::new(phi), r, ctx)
}

/// `t_k = r · 2^(−k) · cot(φ/2^k)` for `k = 0..=m`.
pub fn generate<R: Real>(params: &FitParams<R>, m: u32, ctx: &PrecisionContext) -> Result<Vec<R>> {
    (0..=m)
        .map(|k| {
            let cot = guarded_cot(&params.phi.halved(k), ctx)?;
            Ok(params.r.scale_pow2(-(k as i32)) * cot)
        })
        .collect()
}

/// `r/φ`, the common limit of the generated terms.
pub fn sequence_limit<R: Real>(params: &FitParams<R>) -> R {
    params.r.clone() / params.phi.radians().clone()
}

/// `t_{k+1}(t_{k+1} − t_k)` for consecutive pairs; these fall in quadruple ratio.
pub fn rectangle_products<R: Real>(terms: &[R]) -> Vec<R> {
    terms
        .windows(2)
        .map(|w| w[1].clone() * (w[1].clone() - w[0].clone()))
        .collect()
}
