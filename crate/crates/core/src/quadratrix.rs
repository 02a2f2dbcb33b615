//! The quadratrix and the secant-product spiral.
//!
//! Two descriptions appear side by side:
//!
//! * the Cartesian quadratrix `x = y · cot(π y / 2h)`, which passes through
//!   every point `(t_k, a/2^k)` of the apposition iteration when `h = 2a` and
//!   meets the base at `2h/π`;
//! * the polar curve `v = q · sin φ / φ` carrying the spiral points
//!   `B, C, D, …` whose distances are partial secant products.
//!
//! The polar curve is the image of the Cartesian one under inversion in the
//! circle of radius² `2hq/π` about the origin; [`polar_to_cartesian`] applies
//! that map.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{Error, Result};
use crate::numerics::{guarded_cot, guarded_sec, sinc, Angle, PrecisionContext};

/// The quadrant length for unit radius.
pub const QUADRANT: f64 = FRAC_PI_2;

/// A point `(φ, v)` of the polar curve `v = q sin φ / φ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratrixPolar {
    pub phi: f64,
    pub v: f64,
    pub q: f64,
}

impl QuadratrixPolar {
    pub fn at(phi: f64, q: f64, ctx: &PrecisionContext) -> Result<Self> {
        Ok(Self {
            phi,
            v: polar_radius(phi, q, ctx)?,
            q,
        })
    }
}

/// A point `(x, y)` of the Cartesian quadratrix of height `h`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratrixCartesian {
    pub x: f64,
    pub y: f64,
    pub h: f64,
}

impl QuadratrixCartesian {
    pub fn at(y: f64, h: f64, ctx: &PrecisionContext) -> Result<Self> {
        Ok(Self {
            x: cartesian_x(y, h, ctx)?,
            y,
            h,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpiralPoint {
    /// Angle measured from `OA`.
    pub angle: f64,
    /// Distance from `O`.
    pub distance: f64,
}

impl SpiralPoint {
    pub fn to_xy(&self) -> (f64, f64) {
        (
            self.distance * self.angle.cos(),
            self.distance * self.angle.sin(),
        )
    }
}

/// The points `B, C, D, …` of the repeated bisect-and-erect-normal construction.
#[derive(Debug, Clone, PartialEq)]
pub struct SummariumSpiral {
    pub points: Vec<SpiralPoint>,
    pub depth: u32,
}

impl SummariumSpiral {
    /// `OZ_m`, the distance of the last point.
    pub fn final_distance(&self) -> f64 {
        self.points.last().map_or(1.0, |p| p.distance)
    }
}

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::NonPositiveInput { name, value })
    }
}

/// `v = q · sinc(φ)`; at `φ = 0` this is the quadrant itself.
pub fn polar_radius(phi: f64, q: f64, ctx: &PrecisionContext) -> Result<f64> {
    check_positive("q", q)?;
    if !(0.0..=q).contains(&phi) {
        return Err(Error::Domain(format!("φ = {phi} must lie in [0, q = {q}]")));
    }
    Ok(q * sinc(&Angle::new(phi), ctx))
}

/// `v = (n/m) · sin(m q / n)`, the point at `φ = (m/n) q`.
pub fn rational_point(m: u32, n: u32, q: f64) -> Result<f64> {
    check_positive("q", q)?;
    if m == 0 || m > n {
        return Err(Error::Domain(format!(
            "need 0 < m ≤ n, got m = {m}, n = {n}"
        )));
    }
    let ratio = m as f64 / n as f64;
    Ok((ratio * q).sin() / ratio)
}

/// `x = y · cot(π y / 2h)`, evaluated through `sinc` so that `y → 0` is total.
pub fn cartesian_x(y: f64, h: f64, ctx: &PrecisionContext) -> Result<f64> {
    check_positive("h", h)?;
    if !(y > 0.0 && y <= h) {
        return Err(Error::Domain(format!("y = {y} must lie in (0, h = {h}]")));
    }
    let theta = FRAC_PI_2 * (y / h);
    if theta < 0.5 {
        // y·cos θ / sin θ = (2h/π) · cos θ / sinc θ
        let base = 2.0 * h / PI;
        Ok(base * theta.cos() / sinc(&Angle::new(theta), ctx))
    } else {
        Ok(y * guarded_cot(&Angle::new(theta), ctx)?)
    }
}

/// Where the quadratrix of height `h` meets the base: `2h/π`.
pub fn base_crossing(h: f64) -> f64 {
    2.0 * h / PI
}

/// Whether `(x, y)` lies on the quadratrix of height `h` to relative
/// tolerance `tol`.
pub fn membership(x: f64, y: f64, h: f64, tol: f64, ctx: &PrecisionContext) -> Result<bool> {
    check_positive("tol", tol)?;
    let on_curve = cartesian_x(y, h, ctx)?;
    Ok((x - on_curve).abs() <= tol * x.abs().max(1.0))
}

/// Maps a point of the polar curve onto the Cartesian quadratrix of height
/// `h` by inversion in the circle of radius² `2hq/π`.
pub fn polar_to_cartesian(point: &QuadratrixPolar, h: f64) -> Result<QuadratrixCartesian> {
    check_positive("h", h)?;
    check_positive("v", point.v)?;
    let rho = 2.0 * h * point.q / PI / point.v;
    Ok(QuadratrixCartesian {
        x: rho * point.phi.cos(),
        y: rho * point.phi.sin(),
        h,
    })
}

/// Points at angles `q/2^k` and distances `Π_{j=1..k} sec(q/2^j)`, `k = 0..=m`.
pub fn summarium_spiral(m: u32, ctx: &PrecisionContext) -> Result<SummariumSpiral> {
    let q = Angle::new(QUADRANT);
    let mut points = Vec::with_capacity(m as usize + 1);
    points.push(SpiralPoint {
        angle: QUADRANT,
        distance: 1.0,
    });
    let mut distance = 1.0;
    for k in 1..=m {
        let angle = q.halved(k);
        distance *= guarded_sec(&angle, ctx)?;
        points.push(SpiralPoint {
            angle: *angle.radians(),
            distance,
        });
    }
    Ok(SummariumSpiral { points, depth: m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_PI_4;

    const SQRT2: f64 = 1.41421356237309504880;

    fn ctx() -> PrecisionContext {
        PrecisionContext::native()
    }

    #[test]
    fn polar_radius_examples() {
        assert!((polar_radius(FRAC_PI_2, FRAC_PI_2, &ctx()).unwrap() - 1.0).abs() < 1e-16);
        assert_eq!(polar_radius(0.0, FRAC_PI_2, &ctx()).unwrap(), FRAC_PI_2);
        assert!((polar_radius(FRAC_PI_4, FRAC_PI_2, &ctx()).unwrap() - SQRT2).abs() < 1e-15);
        assert!(polar_radius(-0.1, FRAC_PI_2, &ctx()).is_err());
        assert!(polar_radius(1.6, FRAC_PI_2, &ctx()).is_err());
    }

    #[test]
    fn rational_point_examples() {
        assert_eq!(rational_point(1, 1, QUADRANT).unwrap(), 1.0);
        assert!((rational_point(1, 2, QUADRANT).unwrap() - SQRT2).abs() < 1e-15);
        assert!((rational_point(1, 3, QUADRANT).unwrap() - 1.5).abs() < 1e-15);
        assert!(rational_point(0, 3, QUADRANT).is_err());
        assert!(rational_point(4, 3, QUADRANT).is_err());
        // agrees with the polar radius at φ = (m/n) q
        let v = polar_radius(QUADRANT * 2.0 / 5.0, QUADRANT, &ctx()).unwrap();
        assert!((rational_point(2, 5, QUADRANT).unwrap() - v).abs() < 1e-15);
    }

    #[test]
    fn cartesian_examples() {
        assert_eq!(cartesian_x(2.0, 2.0, &ctx()).unwrap(), 0.0);
        assert_eq!(cartesian_x(3.7, 3.7, &ctx()).unwrap(), 0.0);
        assert!((cartesian_x(1.0, 2.0, &ctx()).unwrap() - 1.0).abs() < 1e-15);
        let near_base = cartesian_x(1e-300, 1.0, &ctx()).unwrap();
        assert!((near_base - 0.63661977236758134308).abs() < 1e-16);
        assert!(cartesian_x(0.0, 1.0, &ctx()).is_err());
        assert!(cartesian_x(1.5, 1.0, &ctx()).is_err());
        // both evaluation branches meet continuously
        let y = 0.5 / FRAC_PI_2;
        let lo = cartesian_x(y * (1.0 - 1e-12), 1.0, &ctx()).unwrap();
        let hi = cartesian_x(y * (1.0 + 1e-12), 1.0, &ctx()).unwrap();
        assert!((lo - hi).abs() < 1e-11);
    }

    #[test]
    fn membership_examples() {
        assert!(membership(1.0, 1.0, 2.0, 1e-12, &ctx()).unwrap());
        let q_point = 0.5 / (std::f64::consts::PI / 8.0).tan();
        assert!(membership(q_point, 0.5, 2.0, 1e-12, &ctx()).unwrap());
        assert!(!membership(1.1, 1.0, 2.0, 1e-9, &ctx()).unwrap());
        assert!(membership(1.0, 1.0, 2.0, 0.0, &ctx()).is_err());
    }

    #[test]
    fn spiral_examples() {
        let s0 = summarium_spiral(0, &ctx()).unwrap();
        assert_eq!(
            s0.points,
            vec![SpiralPoint {
                angle: QUADRANT,
                distance: 1.0
            }]
        );
        let s1 = summarium_spiral(1, &ctx()).unwrap();
        assert_eq!(s1.points[1].angle, FRAC_PI_4);
        assert!((s1.points[1].distance - SQRT2).abs() < 1e-15);
        let (x, y) = s1.points[1].to_xy();
        assert!((x - 1.0).abs() < 1e-15 && (y - 1.0).abs() < 1e-15);
        let s20 = summarium_spiral(20, &ctx()).unwrap();
        assert!((s20.final_distance() - FRAC_PI_2).abs() < 1e-11);
        assert!(s20.points.windows(2).all(|w| w[1].distance > w[0].distance));
    }

    #[test]
    fn inversion_lands_on_cartesian_curve() {
        let h = 2.0;
        for i in 1..20 {
            let phi = QUADRANT * i as f64 / 20.0;
            let p = QuadratrixPolar::at(phi, QUADRANT, &ctx()).unwrap();
            let c = polar_to_cartesian(&p, h).unwrap();
            let x = cartesian_x(c.y, h, &ctx()).unwrap();
            assert!((c.x - x).abs() < 1e-12, "phi = {phi}");
        }
    }
}
