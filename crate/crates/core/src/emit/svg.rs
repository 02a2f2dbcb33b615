//! Deterministic SVG rendering of the apposition rectangles, the polygon
//! radii and the secant-product spiral.
//!
//! Mathematical coordinates are mapped to a 1024×1024 canvas by a uniform
//! scale `s` that fits the figure's bounding box into the 896×896 area inside
//! a 64-unit margin, centred, with `y` pointing up:
//!
//! ```text
//! X = tx + s·x,   Y = ty − s·y
//! ```
//!
//! The map is recorded on the plot group as
//! `data-affine="matrix(s 0 0 -s tx ty)"`. Every number is written with six
//! decimals.

use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt::Write as _;
use std::str::FromStr;

use super::format::coord;
use crate::error::{Error, Result};
use crate::numerics::{sinc, Angle, PrecisionContext};
use crate::quadratrix::{base_crossing, cartesian_x, summarium_spiral, QUADRANT};
use crate::sequences::{closed_form_term, run_iteration};

pub const CANVAS: f64 = 1024.0;
pub const MARGIN: f64 = 64.0;
pub const PLOT: f64 = CANVAS - 2.0 * MARGIN;
/// Beyond this many steps the new elements are far below one canvas unit.
pub const MAX_STEPS: u32 = 30;

const CURVE_SAMPLES: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FigureName {
    DescartesRectangles,
    PolygonRadii,
    SummariumSpiral,
}

impl FigureName {
    pub const ALL: [FigureName; 3] = [
        FigureName::DescartesRectangles,
        FigureName::PolygonRadii,
        FigureName::SummariumSpiral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FigureName::DescartesRectangles => "descartes_rectangles",
            FigureName::PolygonRadii => "polygon_radii",
            FigureName::SummariumSpiral => "summarium_spiral",
        }
    }
}

impl FromStr for FigureName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FigureName::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnsupportedFigure(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FigureSpec {
    pub name: FigureName,
    pub steps: u32,
    pub overlay_quadratrix: bool,
}

impl FigureSpec {
    pub fn new(name: FigureName, steps: u32) -> Self {
        Self {
            name,
            steps,
            overlay_quadratrix: false,
        }
    }

    pub fn with_overlay(mut self, overlay: bool) -> Self {
        self.overlay_quadratrix = overlay;
        self
    }
}

/// The canvas map for a bounding box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Affine {
    pub scale: f64,
    pub tx: f64,
    pub ty: f64,
}

impl Affine {
    pub fn fit(xmin: f64, ymin: f64, xmax: f64, ymax: f64) -> Self {
        let (w, h) = (xmax - xmin, ymax - ymin);
        let scale = PLOT / w.max(h);
        Self {
            scale,
            tx: MARGIN + (PLOT - scale * w) / 2.0 - scale * xmin,
            ty: MARGIN + (PLOT - scale * h) / 2.0 + scale * ymax,
        }
    }

    pub fn apply(&self, (x, y): (f64, f64)) -> (f64, f64) {
        (self.tx + self.scale * x, self.ty - self.scale * y)
    }

    pub fn invert(&self, (cx, cy): (f64, f64)) -> (f64, f64) {
        ((cx - self.tx) / self.scale, (self.ty - cy) / self.scale)
    }

    /// Reads back a `matrix(s 0 0 -s tx ty)` attribute value.
    pub fn parse(attr: &str) -> Option<Self> {
        let inner = attr.strip_prefix("matrix(")?.strip_suffix(')')?;
        let v: Vec<f64> = inner
            .split(' ')
            .map(str::parse)
            .collect::<std::result::Result<_, _>>()
            .ok()?;
        match v[..] {
            [s, 0.0, 0.0, d, tx, ty] if d == -s => Some(Self { scale: s, tx, ty }),
            _ => None,
        }
    }

    fn attr(&self) -> String {
        format!(
            "matrix({} 0 0 {} {} {})",
            coord(self.scale),
            coord(-self.scale),
            coord(self.tx),
            coord(self.ty)
        )
    }
}

type Pt = (f64, f64);

enum Shape {
    Polygon {
        class: &'static str,
        k: Option<u32>,
        points: Vec<Pt>,
    },
    Line {
        class: &'static str,
        from: Pt,
        to: Pt,
    },
    Polyline {
        class: &'static str,
        points: Vec<Pt>,
    },
    Point {
        id: String,
        class: &'static str,
        at: Pt,
    },
    Label {
        text: String,
        at: Pt,
        dx: f64,
        dy: f64,
    },
}

struct Figure {
    name: FigureName,
    steps: u32,
    bbox: [f64; 4],
    shapes: Vec<Shape>,
}

const STYLE: &str = "\
.square{fill:#e8eef7;stroke:#1f3b63;stroke-width:2}\
.rectangle{fill:#f7efe0;stroke:#7a4b0c;stroke-width:1.5}\
.diagonal,.ray{stroke:#555;stroke-width:1;stroke-dasharray:6 4;fill:none}\
.limit{stroke:#b00020;stroke-width:1.5;fill:none}\
.base,.radius{stroke:#000;stroke-width:1.5;fill:none}\
.half-side,.normal{stroke:#1f3b63;stroke-width:1.5;fill:none}\
.quadrant{stroke:#000;stroke-width:1;fill:none}\
.quadratrix{stroke:#2e7d32;stroke-width:2;fill:none}\
.point{fill:#000}\
.point.limit{fill:#b00020}\
.label{font-family:serif;font-size:20px;text-anchor:middle}";

fn letter(alphabet: &[&'static str], k: usize, fallback: &str) -> String {
    alphabet
        .get(k)
        .map(|s| s.to_string())
        .unwrap_or_else(|| format!("{fallback}{k}"))
}

fn check_spec(spec: &FigureSpec, a: f64) -> Result<()> {
    if !(a > 0.0 && a.is_finite()) {
        return Err(Error::NonPositiveInput {
            name: "a",
            value: a,
        });
    }
    if spec.steps == 0 || spec.steps > MAX_STEPS {
        return Err(Error::Domain(format!(
            "steps must lie in 1..={MAX_STEPS}, got {}",
            spec.steps
        )));
    }
    if spec.overlay_quadratrix && spec.name == FigureName::DescartesRectangles {
        return Err(Error::UnsupportedFigure(format!(
            "{} has no quadratrix overlay",
            spec.name.name()
        )));
    }
    Ok(())
}

/// `t₀..t_steps` from the recurrence, continued by the closed form past the
/// precision floor.
fn abscissae(a: f64, steps: u32, ctx: &PrecisionContext) -> Result<Vec<f64>> {
    let state = run_iteration(&a, steps as usize, ctx)?;
    let mut terms = state.terms().to_vec();
    for k in terms.len() as u32..=steps {
        terms.push(closed_form_term(k, &a, ctx)?);
    }
    Ok(terms)
}

fn descartes_rectangles(a: f64, steps: u32, ctx: &PrecisionContext) -> Result<Figure> {
    const LETTERS: [&str; 22] = [
        "b", "c", "d", "e", "f", "g", "h", "i", "k", "l", "m", "n", "o", "p", "q", "r", "s", "t",
        "u", "v", "w", "y",
    ];
    let t = abscissae(a, steps, ctx)?;
    let limit = 4.0 * a / PI;
    let mut shapes = vec![Shape::Polygon {
        class: "square",
        k: None,
        points: vec![(0.0, 0.0), (a, 0.0), (a, a), (0.0, a)],
    }];
    for k in 1..=steps as usize {
        let (x0, x1) = (t[k - 1], t[k]);
        shapes.push(Shape::Polygon {
            class: "rectangle",
            k: Some(k as u32),
            points: vec![(x0, 0.0), (x1, 0.0), (x1, x1), (x0, x1)],
        });
    }
    shapes.push(Shape::Line {
        class: "diagonal",
        from: (0.0, 0.0),
        to: (limit, limit),
    });
    shapes.push(Shape::Line {
        class: "limit",
        from: (limit, 0.0),
        to: (limit, limit),
    });
    shapes.push(Shape::Label {
        text: "a".into(),
        at: (0.0, 0.0),
        dx: -10.0,
        dy: 22.0,
    });
    for (k, &x) in t.iter().enumerate().take(LETTERS.len()) {
        shapes.push(Shape::Label {
            text: LETTERS[k].into(),
            at: (x, 0.0),
            dx: 0.0,
            dy: 22.0,
        });
    }
    shapes.push(Shape::Label {
        text: "x".into(),
        at: (limit, 0.0),
        dx: 12.0,
        dy: 22.0,
    });
    Ok(Figure {
        name: FigureName::DescartesRectangles,
        steps,
        bbox: [0.0, 0.0, limit, limit],
        shapes,
    })
}

/// Samples of `x = y cot(πy/2h)` from `y = h` down to the base crossing.
fn cartesian_quadratrix(h: f64, ctx: &PrecisionContext) -> Result<Vec<Pt>> {
    let mut points = Vec::with_capacity(CURVE_SAMPLES + 1);
    for i in 0..CURVE_SAMPLES {
        let y = h * (CURVE_SAMPLES - i) as f64 / CURVE_SAMPLES as f64;
        points.push((cartesian_x(y, h, ctx)?, y));
    }
    points.push((base_crossing(h), 0.0));
    Ok(points)
}

fn polygon_radii(a: f64, steps: u32, overlay: bool, ctx: &PrecisionContext) -> Result<Figure> {
    const BASE: [&str; 9] = ["E", "F", "G", "H", "I", "K", "L", "M", "N"];
    const TOP: [&str; 9] = ["P", "Q", "R", "S", "T", "V", "W", "Y", "Z"];
    let t = abscissae(a, steps, ctx)?;
    let limit = 4.0 * a / PI;
    let tops: Vec<Pt> = t
        .iter()
        .enumerate()
        .map(|(k, &x)| (x, a * 0.5f64.powi(k as i32)))
        .collect();

    let mut shapes = vec![Shape::Line {
        class: "base",
        from: (0.0, 0.0),
        to: (limit, 0.0),
    }];
    for (k, &top) in tops.iter().enumerate() {
        shapes.push(Shape::Line {
            class: "ray",
            from: (0.0, 0.0),
            to: top,
        });
        shapes.push(Shape::Line {
            class: "half-side",
            from: (t[k], 0.0),
            to: top,
        });
    }
    if overlay {
        shapes.push(Shape::Polyline {
            class: "quadratrix",
            points: cartesian_quadratrix(2.0 * a, ctx)?,
        });
    }
    shapes.push(Shape::Point {
        id: "pt-C".into(),
        class: "point",
        at: (0.0, 0.0),
    });
    shapes.push(Shape::Label {
        text: "C".into(),
        at: (0.0, 0.0),
        dx: -12.0,
        dy: 22.0,
    });
    for (k, &top) in tops.iter().enumerate() {
        let base_name = letter(&BASE, k, "E");
        let top_name = letter(&TOP, k, "P");
        shapes.push(Shape::Point {
            id: format!("pt-{base_name}"),
            class: "point",
            at: (t[k], 0.0),
        });
        shapes.push(Shape::Point {
            id: format!("pt-{top_name}"),
            class: "point",
            at: top,
        });
        if k < BASE.len() {
            shapes.push(Shape::Label {
                text: base_name,
                at: (t[k], 0.0),
                dx: 0.0,
                dy: 22.0,
            });
            shapes.push(Shape::Label {
                text: top_name,
                at: top,
                dx: 0.0,
                dy: -10.0,
            });
        }
    }
    shapes.push(Shape::Point {
        id: "pt-x".into(),
        class: "point limit",
        at: (limit, 0.0),
    });
    shapes.push(Shape::Label {
        text: "x".into(),
        at: (limit, 0.0),
        dx: 12.0,
        dy: 22.0,
    });
    let height = if overlay { 2.0 * a } else { a };
    Ok(Figure {
        name: FigureName::PolygonRadii,
        steps,
        bbox: [0.0, 0.0, limit, height],
        shapes,
    })
}

fn summarium(a: f64, steps: u32, overlay: bool, ctx: &PrecisionContext) -> Result<Figure> {
    const LETTERS: [&str; 23] = [
        "B", "C", "D", "E", "F", "G", "H", "I", "K", "L", "M", "N", "P", "Q", "R", "S", "T", "U",
        "V", "W", "X", "Y", "J",
    ];
    let spiral = summarium_spiral(steps, ctx)?;
    let points: Vec<Pt> = spiral
        .points
        .iter()
        .map(|p| {
            let (x, y) = p.to_xy();
            (a * x, a * y)
        })
        .collect();
    let reach = a * QUADRANT;

    let mut shapes = vec![
        Shape::Line {
            class: "base",
            from: (0.0, 0.0),
            to: (reach, 0.0),
        },
        Shape::Line {
            class: "radius",
            from: (0.0, 0.0),
            to: (0.0, a),
        },
        Shape::Polyline {
            class: "quadrant",
            points: (0..=CURVE_SAMPLES)
                .map(|i| {
                    let theta = FRAC_PI_2 * i as f64 / CURVE_SAMPLES as f64;
                    (a * theta.cos(), a * theta.sin())
                })
                .collect(),
        },
    ];
    for k in 1..points.len() {
        shapes.push(Shape::Line {
            class: "ray",
            from: (0.0, 0.0),
            to: points[k],
        });
        shapes.push(Shape::Line {
            class: "normal",
            from: points[k - 1],
            to: points[k],
        });
    }
    if overlay {
        let mut curve = Vec::with_capacity(CURVE_SAMPLES + 1);
        for i in 0..=CURVE_SAMPLES {
            let phi = QUADRANT * (CURVE_SAMPLES - i) as f64 / CURVE_SAMPLES as f64;
            let v = a * QUADRANT * sinc(&Angle::new(phi), ctx);
            curve.push((v * phi.cos(), v * phi.sin()));
        }
        shapes.push(Shape::Polyline {
            class: "quadratrix",
            points: curve,
        });
    }
    for (id, at, dx, dy) in [("O", (0.0, 0.0), -12.0, 22.0), ("A", (a, 0.0), 0.0, 22.0)] {
        shapes.push(Shape::Point {
            id: format!("pt-{id}"),
            class: "point",
            at,
        });
        shapes.push(Shape::Label {
            text: id.into(),
            at,
            dx,
            dy,
        });
    }
    for (k, &p) in points.iter().enumerate() {
        let name = letter(&LETTERS, k, "B");
        shapes.push(Shape::Point {
            id: format!("pt-{name}"),
            class: "point",
            at: p,
        });
        if k < 6 {
            shapes.push(Shape::Label {
                text: name,
                at: p,
                dx: 10.0,
                dy: -10.0,
            });
        }
    }
    shapes.push(Shape::Point {
        id: "pt-Z".into(),
        class: "point limit",
        at: (reach, 0.0),
    });
    shapes.push(Shape::Label {
        text: "Z".into(),
        at: (reach, 0.0),
        dx: 0.0,
        dy: 22.0,
    });
    Ok(Figure {
        name: FigureName::SummariumSpiral,
        steps,
        bbox: [0.0, 0.0, reach, a],
        shapes,
    })
}

fn points_attr(map: &Affine, points: &[Pt]) -> String {
    let mut out = String::new();
    for (i, &p) in points.iter().enumerate() {
        let (x, y) = map.apply(p);
        if i > 0 {
            out.push(' ');
        }
        let _ = write!(out, "{},{}", coord(x), coord(y));
    }
    out
}

fn serialize(figure: &Figure) -> String {
    let [xmin, ymin, xmax, ymax] = figure.bbox;
    let map = Affine::fit(xmin, ymin, xmax, ymax);
    let size = coord(CANVAS);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{size}\" height=\"{size}\" viewBox=\"0 0 {size} {size}\">"
    );
    let _ = writeln!(out, "<style type=\"text/css\">{STYLE}</style>");
    let _ = writeln!(
        out,
        "<rect class=\"background\" x=\"0.000000\" y=\"0.000000\" width=\"{size}\" height=\"{size}\" fill=\"#ffffff\"/>"
    );
    let _ = writeln!(
        out,
        "<g id=\"plot\" data-figure=\"{}\" data-steps=\"{}\" data-bbox=\"{} {} {} {}\" data-affine=\"{}\">",
        figure.name.name(),
        figure.steps,
        coord(xmin),
        coord(ymin),
        coord(xmax),
        coord(ymax),
        map.attr()
    );
    for shape in &figure.shapes {
        match shape {
            Shape::Polygon { class, k, points } => {
                let k = k.map(|k| format!(" data-k=\"{k}\"")).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "<polygon class=\"{class}\"{k} points=\"{}\"/>",
                    points_attr(&map, points)
                );
            }
            Shape::Line { class, from, to } => {
                let (x1, y1) = map.apply(*from);
                let (x2, y2) = map.apply(*to);
                let _ = writeln!(
                    out,
                    "<line class=\"{class}\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
                    coord(x1),
                    coord(y1),
                    coord(x2),
                    coord(y2)
                );
            }
            Shape::Polyline { class, points } => {
                let _ = writeln!(
                    out,
                    "<polyline class=\"{class}\" points=\"{}\"/>",
                    points_attr(&map, points)
                );
            }
            Shape::Point { id, class, at } => {
                let (x, y) = map.apply(*at);
                let _ = writeln!(
                    out,
                    "<circle id=\"{id}\" class=\"{class}\" cx=\"{}\" cy=\"{}\" r=\"4.000000\"/>",
                    coord(x),
                    coord(y)
                );
            }
            Shape::Label { text, at, dx, dy } => {
                let (x, y) = map.apply(*at);
                let _ = writeln!(
                    out,
                    "<text class=\"label\" x=\"{}\" y=\"{}\">{text}</text>",
                    coord(x + dx),
                    coord(y + dy)
                );
            }
        }
    }
    out.push_str("</g>\n</svg>\n");
    out
}

/// Renders `spec` at scale `a` (the half-side of the square, or the radius
/// `OA` for the spiral).
pub fn render_figure(spec: &FigureSpec, a: f64, ctx: &PrecisionContext) -> Result<String> {
    check_spec(spec, a)?;
    let figure = match spec.name {
        FigureName::DescartesRectangles => descartes_rectangles(a, spec.steps, ctx)?,
        FigureName::PolygonRadii => polygon_radii(a, spec.steps, spec.overlay_quadratrix, ctx)?,
        FigureName::SummariumSpiral => summarium(a, spec.steps, spec.overlay_quadratrix, ctx)?,
    };
    Ok(serialize(&figure))
}
