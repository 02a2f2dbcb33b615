use quadrature::emit::svg::{render_figure, Affine, FigureName, FigureSpec};
use quadrature::{Error, PrecisionContext};

fn render(name: FigureName, steps: u32, overlay: bool) -> String {
    let spec = FigureSpec::new(name, steps).with_overlay(overlay);
    render_figure(&spec, 1.0, &PrecisionContext::native()).unwrap()
}

fn attr<'a>(element: &'a str, key: &str) -> &'a str {
    let start = element.find(&format!(" {key}=\"")).unwrap() + key.len() + 3;
    let len = element[start..].find('"').unwrap();
    &element[start..start + len]
}

fn affine(svg: &str) -> Affine {
    let group = svg
        .lines()
        .find(|l| l.starts_with("<g id=\"plot\""))
        .unwrap();
    Affine::parse(attr(group, "data-affine")).unwrap()
}

fn parse_points(s: &str) -> Vec<(f64, f64)> {
    s.split(' ')
        .map(|p| {
            let (x, y) = p.split_once(',').unwrap();
            (x.parse().unwrap(), y.parse().unwrap())
        })
        .collect()
}

#[test]
fn rectangles_have_corners_on_the_diagonal() {
    let svg = render(FigureName::DescartesRectangles, 3, false);
    assert_eq!(svg.matches("class=\"square\"").count(), 1);
    let rects: Vec<&str> = svg
        .lines()
        .filter(|l| l.contains("class=\"rectangle\""))
        .collect();
    assert_eq!(rects.len(), 3);
    let map = affine(&svg);
    for r in rects {
        let corner = parse_points(attr(r, "points"))[2];
        // the line y = x on the canvas: (X − tx) = (ty − Y)
        let distance = ((corner.0 - map.tx) - (map.ty - corner.1)).abs() / 2f64.sqrt();
        assert!(distance <= 1e-6, "{r}");
    }
}

#[test]
fn spiral_point_c_follows_the_documented_map() {
    let svg = render(FigureName::SummariumSpiral, 2, false);
    let map = affine(&svg);
    let c = svg.lines().find(|l| l.contains("id=\"pt-C\"")).unwrap();
    let at: (f64, f64) = (
        attr(c, "cx").parse().unwrap(),
        attr(c, "cy").parse().unwrap(),
    );
    // polar (π/4, √2)
    let angle = std::f64::consts::FRAC_PI_4;
    let want = map.apply((2f64.sqrt() * angle.cos(), 2f64.sqrt() * angle.sin()));
    assert!((at.0 - want.0).abs() <= 1e-6 && (at.1 - want.1).abs() <= 1e-6);
    let (x, y) = map.invert(at);
    assert!((x - 1.0).abs() < 1e-5 && (y - 1.0).abs() < 1e-5);
}

#[test]
fn coordinates_have_six_decimals() {
    let svg = render(FigureName::PolygonRadii, 5, true);
    for line in svg.lines().filter(|l| l.starts_with("<line")) {
        for key in ["x1", "y1", "x2", "y2"] {
            let v = attr(line, key);
            assert_eq!(v.split_once('.').unwrap().1.len(), 6, "{v}");
        }
    }
}

#[test]
fn rendering_is_deterministic() {
    for name in FigureName::ALL {
        for steps in [1, 4, 12] {
            let overlay = name != FigureName::DescartesRectangles;
            assert_eq!(render(name, steps, overlay), render(name, steps, overlay));
        }
    }
}

#[test]
fn golden_files_are_stable() {
    let cases = [
        (
            FigureName::DescartesRectangles,
            3,
            false,
            include_str!("golden/descartes_rectangles_3.svg"),
        ),
        (
            FigureName::PolygonRadii,
            4,
            true,
            include_str!("golden/polygon_radii_4_overlay.svg"),
        ),
        (
            FigureName::SummariumSpiral,
            5,
            true,
            include_str!("golden/summarium_spiral_5_overlay.svg"),
        ),
    ];
    for (name, steps, overlay, golden) in cases {
        assert_eq!(render(name, steps, overlay), golden, "{}", name.name());
    }
}

#[test]
fn overlay_curves_are_the_quadratrix() {
    let ctx = PrecisionContext::native();
    let svg = render(FigureName::PolygonRadii, 4, true);
    let map = affine(&svg);
    let curve = svg
        .lines()
        .find(|l| l.contains("class=\"quadratrix\""))
        .unwrap();
    let points = parse_points(attr(curve, "points"));
    for &p in &points[..points.len() - 1] {
        let (x, y) = map.invert(p);
        let on_curve = quadrature::quadratrix::cartesian_x(y.clamp(1e-9, 2.0), 2.0, &ctx).unwrap();
        assert!((x - on_curve).abs() < 1e-5);
    }
    // the last sample is the base crossing 4a/π
    let (x, y) = map.invert(*points.last().unwrap());
    assert!((x - 4.0 / std::f64::consts::PI).abs() < 1e-5 && y.abs() < 1e-5);
}

#[test]
fn unknown_figures_are_rejected() {
    assert!(matches!(
        "fig_2".parse::<FigureName>(),
        Err(Error::UnsupportedFigure(_))
    ));
}
