use std::f64::consts::PI;

use serde::Serialize;

use super::{
    angle_at, solve_neusis, Circle, ConstructionTrace, GeometryError, Line, Locus, NeusisProblem,
    Point, Scene, ANGLE_TOLERANCE, GEOMETRIC_TOLERANCE,
};

/// Result of the marked-ruler trisection.
#[derive(Clone, Debug, Serialize)]
pub struct Trisection {
    pub angle: f64,
    /// Angle measured at F in the constructed figure.
    pub third: f64,
    /// Closed-form `angle / 3`.
    pub analytic: f64,
    pub f: Point,
    pub g: Point,
    pub trace: ConstructionTrace,
    #[serde(skip)]
    pub scene: Scene,
}

/// Trisects `angle` with a marked ruler.
///
/// The angle DBE sits at the center B of the unit circle with D = (1, 0). A
/// line through E meets the circle again at G and line BD beyond B at F with
/// FG equal to the radius. The angle at F is a third of DBE.
pub fn trisect_angle(angle: f64) -> Result<Trisection, GeometryError> {
    if !angle.is_finite() {
        return Err(GeometryError::NonFinite);
    }
    if !(angle > 0.0 && angle < PI) {
        return Err(GeometryError::AngleOutOfRange(angle));
    }
    let b = Point::ORIGIN;
    let d = Point::new(1.0, 0.0);
    let e = Point::polar(1.0, angle);
    let problem = NeusisProblem::new(
        e,
        Locus::Circle(Circle::unit()),
        Locus::Line(Line::horizontal(0.0)),
        1.0,
    )?;
    // F on BD extended beyond B, G the second meeting point of FE with the
    // circle (E itself only when FE is tangent). Past 135° E falls between F
    // and G.
    let chosen = solve_neusis(&problem)?
        .into_iter()
        .filter(|s| {
            let (g, f) = (s.b, s.c);
            let u = (g - f).unit();
            let second = e - u * (2.0 * e.dot(u));
            f.x < 0.0 && g.dist(second) <= 1e-6 && (e - f).dot(g - f) > 0.0
        })
        .min_by(|x, y| x.residual.total_cmp(&y.residual))
        .ok_or_else(|| GeometryError::ConstructionFailure("no admissible neusis for trisection".into()))?;
    let (f, g) = (chosen.c, chosen.b);

    let third = angle_at(f, b, g);
    let analytic = angle / 3.0;
    let analytic_f = Point::new(-2.0 * analytic.cos(), 0.0);

    let mut trace = ConstructionTrace::new();
    trace
        .step("figure", [("B", b), ("D", d), ("E", e)], "BD = BE = 1", b.dist(e) - 1.0, GEOMETRIC_TOLERANCE)
        .step("neusis", [("F", f), ("G", g)], "FG = BD", f.dist(g) - b.dist(d), GEOMETRIC_TOLERANCE)
        .step("BFG isosceles", [("G", g)], "BG = GF", b.dist(g) - g.dist(f), GEOMETRIC_TOLERANCE)
        .step("base angles of BFG", [("F", f)], "∠GBF = ∠BFG", angle_at(b, g, f) - third, ANGLE_TOLERANCE)
        .step("BGE isosceles", [("E", e)], "BG = BE", b.dist(g) - b.dist(e), GEOMETRIC_TOLERANCE)
        // ray EF runs along GF, which stays of unit length when E nears F
        .step("angle at E", [("E", e)], "∠BEF = 2∠F", angle_at(e, b, e + (f - g)) - 2.0 * third, ANGLE_TOLERANCE)
        .step("exterior angle at B", [("B", b)], "∠EBD = 3∠F", angle_at(b, e, d) - 3.0 * third, ANGLE_TOLERANCE)
        .step("analytic F", [("F", analytic_f)], "F = (-2cos(θ/3), 0)", f.dist(analytic_f), GEOMETRIC_TOLERANCE)
        .step("trisected angle", [("F", third)], "∠F = θ/3", third - analytic, ANGLE_TOLERANCE);
    trace.verify()?;

    let mut scene = Scene::new();
    scene
        .circle(Circle::unit())
        .point("B", b)
        .point("D", d)
        .point("E", e)
        .point("F", f)
        .point("G", g)
        .segment(f, d)
        .segment(b, e)
        .segment(b, g)
        .segment(f, e);
    Ok(Trisection { angle, third, analytic, f, g, trace, scene })
}

#[derive(Clone, Debug, Serialize)]
pub struct TrisectionCubic {
    pub b: f64,
    /// Ascending; a double root appears twice.
    pub roots: [f64; 3],
    pub trace: ConstructionTrace,
    #[serde(skip)]
    pub scene: Scene,
}

fn cubic_residual(x: f64, b: f64) -> f64 {
    x * x * x - 3.0 * x - b
}

/// Roots of `x³ - 3x = b` for `|b| <= 2`.
///
/// Two isosceles triangles share the side 1: ABC with base AC = x and CDE
/// with base CE = b, the base angle of the second triple that of the first.
/// The base angle of CDE is trisected geometrically; the roots are
/// `2cos(α + 2πk/3)` for the trisected angle α.
pub fn solve_trisection_cubic(b: f64) -> Result<TrisectionCubic, GeometryError> {
    if !b.is_finite() {
        return Err(GeometryError::NonFinite);
    }
    let mut trace = ConstructionTrace::new();
    if (b.abs() - 2.0).abs() <= 1e-14 {
        let s = b.signum();
        let mut roots = [2.0 * s, -s, -s];
        roots.sort_by(f64::total_cmp);
        for (label, x) in ["x1", "x2", "x3"].into_iter().zip(roots) {
            trace.step("root", [(label, x)], "x³ - 3x = b", cubic_residual(x, 2.0 * s), GEOMETRIC_TOLERANCE);
        }
        return Ok(TrisectionCubic { b: 2.0 * s, roots, trace, scene: Scene::new() });
    }
    if b.abs() > 2.0 {
        return Err(GeometryError::OutsideTrisection(b));
    }

    let beta = (b / 2.0).acos();
    let tri = trisect_angle(beta)?;
    let alpha = tri.third;
    let mut roots = [0.0, 1.0, 2.0].map(|k| 2.0 * (alpha + 2.0 * PI * k / 3.0).cos());
    roots.sort_by(f64::total_cmp);
    let x = 2.0 * alpha.cos();

    // C at the origin, A and E on the x axis, B and D above it
    let c = Point::ORIGIN;
    let a = Point::new(-x, 0.0);
    let e = Point::new(b, 0.0);
    let bp = Point::new(-x / 2.0, (1.0 - x * x / 4.0).max(0.0).sqrt());
    let u = (bp - a).unit();
    // second meeting of line AB with the unit circle at C
    let d = a + u * (-2.0 * u.dot(a - c) - 1.0);
    // BD, negative when D falls between A and B (x < √2)
    let y = (d - a).dot(u) - 1.0;

    trace.extend("trisection", tri.trace);
    trace
        .step("first triangle", [("A", a), ("B", bp), ("C", c)], "AB = BC = 1", (a.dist(bp) - 1.0).abs().max((bp.dist(c) - 1.0).abs()), GEOMETRIC_TOLERANCE)
        .step("second triangle", [("D", d), ("E", e)], "CD = DE = 1", (c.dist(d) - 1.0).abs().max((d.dist(e) - 1.0).abs()), GEOMETRIC_TOLERANCE)
        .step("tripled base angle", [("D", d)], "∠DCE = 3∠BAC, E taken along +x", angle_at(c, d, Point::new(1.0, 0.0)) - 3.0 * angle_at(a, bp, c), ANGLE_TOLERANCE)
        .step("secants from A", [("y", y)], "AB·AD = (x - 1)(x + 1), AD = 1 + y", (1.0 + y) - (x - 1.0) * (x + 1.0), GEOMETRIC_TOLERANCE)
        .step("parallel perpendiculars", [("y", y)], "1 : y = x/2 : (x + b)/2", (x + b) - x * y, GEOMETRIC_TOLERANCE);
    for (label, r) in ["x1", "x2", "x3"].into_iter().zip(roots) {
        trace.step("root", [(label, r)], "x³ - 3x = b", cubic_residual(r, b), GEOMETRIC_TOLERANCE);
    }
    trace.verify()?;

    let mut scene = Scene::new();
    scene
        .circle(Circle { center: c, radius: 1.0 })
        .point("A", a)
        .point("B", bp)
        .point("C", c)
        .point("D", d)
        .point("E", e)
        .segment(a, d)
        .segment(a, e)
        .segment(bp, c)
        .segment(c, d)
        .segment(d, e);
    Ok(TrisectionCubic { b, roots, trace, scene })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sixty_degrees() {
        let t = trisect_angle(PI / 3.0).unwrap();
        assert!((t.third.to_degrees() - 20.0).abs() < 1e-9);
        assert!((2.0 * t.third.cos() - 1.879385241571817).abs() < 1e-9);
        assert!(t.trace.is_verified());
    }

    #[test]
    fn right_angle_and_small_angle() {
        let t = trisect_angle(PI / 2.0).unwrap();
        assert!((t.third - PI / 6.0).abs() < 1e-9);
        let t = trisect_angle(1e-3).unwrap();
        assert!((t.third - 1e-3 / 3.0).abs() < 1e-9);
    }

    #[test]
    fn obtuse_and_extreme_angles() {
        // past 135° E lies between F and G
        for deg in [134.0f64, 135.0, 136.0, 150.0, 170.0, 179.9] {
            let a = deg.to_radians();
            let t = trisect_angle(a).unwrap();
            assert!((t.third - a / 3.0).abs() < 1e-9, "{deg}");
            assert!(t.trace.is_verified());
        }
        for k in [6, 9, 12] {
            let eps = 10f64.powi(-k);
            assert!((trisect_angle(eps).unwrap().third - eps / 3.0).abs() < 1e-9);
            assert!((trisect_angle(PI - eps).unwrap().third - (PI - eps) / 3.0).abs() < 1e-9);
        }
    }

    #[test]
    fn cubic_near_the_boundary() {
        for b in [-1.9, -1.5, -1.42, -2.0 + 1e-12, 2.0 - 1e-12] {
            let t = solve_trisection_cubic(b).unwrap();
            for x in t.roots {
                assert!(cubic_residual(x, b).abs() < 1e-10, "{b}");
            }
            assert!(t.trace.is_verified());
        }
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(matches!(trisect_angle(0.0), Err(GeometryError::AngleOutOfRange(_))));
        assert!(matches!(trisect_angle(PI), Err(GeometryError::AngleOutOfRange(_))));
    }

    #[test]
    fn trisection_cubic_examples() {
        let r = solve_trisection_cubic(1.0).unwrap().roots;
        let expected = [-1.532088886237956, -0.3472963553338607, 1.879385241571817];
        for (g, e) in r.iter().zip(expected) {
            assert!((g - e).abs() < 1e-10);
        }
        assert_eq!(solve_trisection_cubic(2.0).unwrap().roots, [-1.0, -1.0, 2.0]);
        assert_eq!(solve_trisection_cubic(-2.0).unwrap().roots, [-2.0, 1.0, 1.0]);
        let r = solve_trisection_cubic(0.0).unwrap().roots;
        let s3 = 3f64.sqrt();
        assert!((r[0] + s3).abs() < 1e-10 && r[1].abs() < 1e-10 && (r[2] - s3).abs() < 1e-10);
        assert!(matches!(solve_trisection_cubic(2.5), Err(GeometryError::OutsideTrisection(_))));
    }

    #[test]
    fn trace_records_proportions() {
        let t = solve_trisection_cubic(0.7).unwrap();
        assert!(t.trace.find("secants from A").unwrap().passed());
        assert!(t.trace.find("parallel perpendiculars").unwrap().passed());
        assert!(t.trace.steps.iter().any(|s| s.name.starts_with("trisection: ")));
    }
}
