use std::f64::consts::PI;

use serde::Serialize;

use super::{
    angle_at, solve_neusis, Circle, ConstructionTrace, GeometryError, Line, Locus, NeusisProblem,
    Point, Scene, ANGLE_TOLERANCE, GEOMETRIC_TOLERANCE,
};
use crate::exact::{numeric_roots, Polynomial, DEFAULT_TOLERANCE};

/// The point I on the extended diameter with `IB : IA = AB² : IC²`.
#[derive(Clone, Debug, Serialize)]
pub struct HeptagonPointI {
    pub radius: f64,
    pub i: Point,
    /// `|ID|`; in units of the radius it solves `x³ - (7/3)x = 7/27`.
    pub x: f64,
    /// `DE²`, which is `7/9` of the squared radius.
    pub r_squared: f64,
    pub trace: ConstructionTrace,
    #[serde(skip)]
    pub scene: Scene,
}

fn line_meeting(p: Point, dir: Point, q: Point, dir2: Point) -> Result<Point, GeometryError> {
    let l1 = Line::through(p, p + dir)?;
    let l2 = Line::through(q, q + dir2)?;
    l1.intersect(&l2)
        .ok_or_else(|| GeometryError::ConstructionFailure("parallel lines do not meet".into()))
}

/// Builds I on the diameter BAC extended beyond B, for a circle of the given
/// radius centered at the origin with C on the positive x axis.
///
/// D is taken with AD = 1/3 of the radius, E is the hexagon vertex a sixth of
/// the circle from C, AF ∥ DE, the line FGH is placed with GH = AB, and
/// EI ∥ FG meets the diameter at I. The proof figure adds K on EI with
/// DK ∥ AG and L, M the midpoints of DC and DL.
pub fn heptagon_point_i(radius: f64) -> Result<HeptagonPointI, GeometryError> {
    if !radius.is_finite() {
        return Err(GeometryError::NonFinite);
    }
    if radius <= 0.0 {
        return Err(GeometryError::Degenerate("radius must be positive"));
    }
    let rho = radius;
    let circle = Circle::new(Point::ORIGIN, rho)?;
    let a = Point::ORIGIN;
    let b = Point::new(-rho, 0.0);
    let c = Point::new(rho, 0.0);
    let d = Point::new(rho / 3.0, 0.0);
    let e = circle.point_at(PI / 3.0);
    let f = a + (e - d).unit() * rho;

    let problem = NeusisProblem::new(f, Locus::Circle(circle), Locus::Line(Line::horizontal(0.0)), rho)?;
    let chosen = solve_neusis(&problem)?
        .into_iter()
        .filter(|s| {
            let (g, h) = (s.b, s.c);
            h.x < 0.0 && g.dist(f) > 1e-9 * rho && (g - f).dot(h - f) > 0.0 && g.dist(f) < h.dist(f)
        })
        .min_by(|x, y| x.residual.total_cmp(&y.residual))
        .ok_or_else(|| GeometryError::ConstructionFailure("no admissible neusis through F".into()))?;
    let (g, h) = (chosen.b, chosen.c);

    let i = line_meeting(e, g - f, a, Point::new(1.0, 0.0))?;
    let x = i.dist(d);
    let k = line_meeting(e, i - e, d, g - a)?;
    let l = d.midpoint(c);
    let m = d.midpoint(l);
    let r = d.dist(e);
    let r_squared = r * r;
    let scale3 = rho * rho * rho;
    let u = x / rho;

    let parallel = |p: Point, q: Point| p.unit().cross(q.unit());
    let mut trace = ConstructionTrace::new();
    trace
        .step("D on the diameter", [("D", d)], "AD = AB/3", a.dist(d) - rho / 3.0, GEOMETRIC_TOLERANCE * rho)
        .step("hexagon vertex", [("E", e)], "CE = AC", c.dist(e) - rho, GEOMETRIC_TOLERANCE * rho)
        .step("AF ∥ DE", [("F", f)], "AF ∥ DE, AF = AB", parallel(f - a, e - d).abs().max((a.dist(f) - rho).abs() / rho), GEOMETRIC_TOLERANCE)
        .step("neusis FGH", [("G", g), ("H", h)], "GH = AB", g.dist(h) - rho, GEOMETRIC_TOLERANCE * rho)
        .step("trisection of FAC", [("H", h)], "∠AHG = ∠FAC/3", angle_at(h, a, g) - angle_at(a, f, c) / 3.0, ANGLE_TOLERANCE)
        .step("EI ∥ FG", [("I", i)], "EI ∥ FG, I on BC", parallel(i - e, g - f).abs().max(i.y.abs() / rho), GEOMETRIC_TOLERANCE)
        .step("DK ∥ AG", [("K", k)], "DK ∥ AG, K on EI", parallel(k - d, g - a), GEOMETRIC_TOLERANCE)
        .step("IKD isosceles", [("K", k)], "KI = KD = DE", (k.dist(i) - k.dist(d)).abs().max((k.dist(d) - r).abs()), GEOMETRIC_TOLERANCE * rho)
        .step("DEL isosceles", [("L", l)], "EL = ED", e.dist(l) - r, GEOMETRIC_TOLERANCE * rho)
        .step("tripled base angle", [("D", d)], "∠EDL = 3∠KID", angle_at(d, e, l) - 3.0 * angle_at(i, k, d), ANGLE_TOLERANCE)
        .step("right triangle DEM", [("M", m)], "DE² = DM² + EM²", r_squared - (d.dist(m).powi(2) + e.dist(m).powi(2)), GEOMETRIC_TOLERANCE * rho * rho)
        .step("r² = 7/9", [("r2", r_squared)], "DE² = (7/9)AB²", r_squared / (rho * rho) - 7.0 / 9.0, GEOMETRIC_TOLERANCE)
        .step("isosceles cubic", [("x", x)], "x³ - 3x·r² = DL·r²", (x.powi(3) - 3.0 * x * r_squared - d.dist(l) * r_squared) / scale3, GEOMETRIC_TOLERANCE)
        .step("cubic for ID", [("x", u)], "x³ - (7/3)x - 7/27 = 0", u.powi(3) - 7.0 / 3.0 * u - 7.0 / 27.0, GEOMETRIC_TOLERANCE)
        .step(
            "lengths along the diameter",
            [("I", i)],
            "IB = x - 4/3, IC = x + 2/3, IA = x - 1/3",
            (i.dist(b) / rho - (u - 4.0 / 3.0))
                .abs()
                .max((i.dist(c) / rho - (u + 2.0 / 3.0)).abs())
                .max((i.dist(a) / rho - (u - 1.0 / 3.0)).abs()),
            GEOMETRIC_TOLERANCE,
        )
        .step("IB·IC² = IA·AB²", [("I", i)], "IB·IC² = IA·AB²", (i.dist(b) * i.dist(c).powi(2) - i.dist(a) * rho * rho) / scale3, GEOMETRIC_TOLERANCE);
    trace.verify()?;

    let mut scene = Scene::new();
    scene.circle(circle);
    for (label, p) in [("A", a), ("B", b), ("C", c), ("D", d), ("E", e), ("F", f), ("G", g), ("H", h), ("I", i), ("K", k), ("L", l), ("M", m)] {
        scene.point(label, p);
    }
    scene
        .segment(i, c)
        .segment(d, e)
        .segment(a, f)
        .segment(f, h)
        .segment(e, i)
        .segment(a, g)
        .segment(d, k)
        .segment(e, m);
    Ok(HeptagonPointI { radius, i, x, r_squared, trace, scene })
}

#[derive(Clone, Debug, Serialize)]
pub struct Heptagon {
    pub circle: Circle,
    /// Starting at B and proceeding through E.
    pub vertices: Vec<Point>,
    pub side: f64,
    /// Measured angle BAE.
    pub central_angle: f64,
    /// Measured vertex angle EAF of the isosceles triangle AEF.
    pub vertex_angle: f64,
    pub point_i: HeptagonPointI,
    pub trace: ConstructionTrace,
    #[serde(skip)]
    pub scene: Scene,
}

/// The regular heptagon inscribed in `circle`.
///
/// With BAC the diameter and D the point I above, DE = AB meets the circle at
/// E and again at F. Triangle AEF has base angles three times its vertex
/// angle, so BAE is two sevenths of two right angles and BE is a side.
pub fn heptagon_construct(circle: &Circle) -> Result<Heptagon, GeometryError> {
    let circle = Circle::new(circle.center, circle.radius)?;
    let rho = circle.radius;
    let point_i = heptagon_point_i(rho)?;
    let a = circle.center;
    let b = a + Point::new(-rho, 0.0);
    let c = a + Point::new(rho, 0.0);
    let d = a + point_i.i;

    let e = circle
        .intersect_circle(&Circle::new(d, rho)?)
        .into_iter()
        .max_by(|p, q| p.y.total_cmp(&q.y))
        .ok_or_else(|| GeometryError::ConstructionFailure("DE = AB does not reach the circle".into()))?;
    let u = (e - d).unit();
    let da = d.dist(a);
    let f = d + u * ((da * da - rho * rho) / rho);

    let (db, dc, de, df) = (d.dist(b), d.dist(c), d.dist(e), d.dist(f));
    let one = angle_at(a, e, f);
    let central = angle_at(a, b, e);
    let side = b.dist(e);
    let rel = |v: f64| v / (rho * rho);

    let mut trace = ConstructionTrace::new();
    trace.extend("point I", point_i.trace.clone());
    trace
        .step("DE = AB", [("D", d), ("E", e)], "DE = AB, E on the circle", (de - rho).abs().max(circle.distance(e)) / rho, GEOMETRIC_TOLERANCE)
        .step("F on DE", [("F", f)], "F on the circle", circle.distance(f) / rho, GEOMETRIC_TOLERANCE)
        .step("secant through D", [("F", f)], "DF·DE = DB·DC", rel(df * de - db * dc), GEOMETRIC_TOLERANCE)
        .step("defining relation of D", [("D", d)], "DB·DC² = DA·AB²", (db * dc * dc - da * rho * rho) / rho.powi(3), GEOMETRIC_TOLERANCE)
        .step("combined", [("D", d)], "DF·DC = DA·DE", rel(df * dc - da * de), GEOMETRIC_TOLERANCE)
        .step("proportion", [("D", d)], "DF : DE = DA : DC", df / de - da / dc, GEOMETRIC_TOLERANCE)
        .step("EC ∥ AF", [("E", e), ("C", c), ("F", f)], "EC ∥ AF", (c - e).unit().cross((f - a).unit()), GEOMETRIC_TOLERANCE)
        .step("corresponding angles", [("C", c)], "∠ECA = ∠BAF", angle_at(c, e, a) - angle_at(a, b, f), ANGLE_TOLERANCE)
        .step("inscribed angle", [("A", a)], "∠BAE = 2∠ECA", central - 2.0 * angle_at(c, e, a), ANGLE_TOLERANCE)
        .step("AF bisects BAE", [("F", f)], "∠EAF = ∠FAB", one - angle_at(a, f, b), ANGLE_TOLERANCE)
        .step("DAE isosceles", [("D", d)], "∠ADE = ∠DAE = 2∠EAF", (angle_at(d, a, e) - angle_at(a, d, e)).abs().max((angle_at(d, a, e) - 2.0 * one).abs()), ANGLE_TOLERANCE)
        .step("exterior angle at F", [("F", f)], "∠AFE = 3∠EAF", angle_at(f, a, e) - 3.0 * one, ANGLE_TOLERANCE)
        .step("AEF isosceles", [("E", e)], "∠AEF = ∠AFE = 3∠EAF", angle_at(e, a, f) - 3.0 * one, ANGLE_TOLERANCE)
        .step("vertex angle", [("angle", one)], "∠EAF = π/7", one - PI / 7.0, ANGLE_TOLERANCE)
        .step("central angle", [("angle", central)], "∠BAE = 2π/7", central - 2.0 * PI / 7.0, ANGLE_TOLERANCE)
        .step("side", [("BE", side)], "BE = 2 sin(π/7)·AB", side / rho - 2.0 * (PI / 7.0).sin(), GEOMETRIC_TOLERANCE);
    trace.verify()?;

    // E lies clockwise from B as seen from A
    let vertices: Vec<Point> = (0..7).map(|k| b.rotate_about(a, -(k as f64) * central)).collect();

    let mut scene = Scene::new();
    scene.circle(circle);
    for (label, p) in [("A", a), ("B", b), ("C", c), ("D", d), ("E", e), ("F", f)] {
        scene.point(label, p);
    }
    scene.segment(d, c).segment(d, e).segment(a, f).segment(a, e).segment(e, c);
    for k in 0..7 {
        scene.segment(vertices[k], vertices[(k + 1) % 7]);
    }
    Ok(Heptagon { circle, vertices, side, central_angle: central, vertex_angle: one, point_i, trace, scene })
}

/// `y³ + y² - 2y - 1`.
pub fn cyclotomic_residual(y: f64) -> f64 {
    ((y + 1.0) * y - 2.0) * y - 1.0
}

#[derive(Clone, Debug, Serialize)]
pub struct CyclotomicReport {
    /// `(k, 2cos(2πk/7), residual)` for k = 1, 2, 3.
    pub roots: Vec<(u32, f64, f64)>,
    /// Largest distance from the numeric roots of the cubic to the cosines.
    pub numeric_deviation: f64,
    /// `2cos` of the constructed central angle, and its residual.
    pub constructed_y: f64,
    pub constructed_residual: f64,
    pub passed: bool,
}

/// Checks that `2cos(2πk/7)`, k = 1, 2, 3, are the roots of
/// `y³ + y² - 2y - 1`, and that the constructed heptagon's central angle
/// gives one of them.
pub fn heptagon_cyclotomic_check() -> Result<CyclotomicReport, GeometryError> {
    let roots: Vec<(u32, f64, f64)> = (1..=3)
        .map(|k| {
            let y = 2.0 * (2.0 * PI * k as f64 / 7.0).cos();
            (k, y, cyclotomic_residual(y).abs())
        })
        .collect();
    let cubic = Polynomial::from_integers(&[-1, -2, 1, 1]);
    let numeric = numeric_roots(&cubic, DEFAULT_TOLERANCE)
        .map_err(|e| GeometryError::ConstructionFailure(e.to_string()))?
        .real();
    let mut expected: Vec<f64> = roots.iter().map(|r| r.1).collect();
    expected.sort_by(f64::total_cmp);
    let numeric_deviation = if numeric.len() == 3 {
        numeric.iter().zip(&expected).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    let hept = heptagon_construct(&Circle::unit())?;
    let constructed_y = 2.0 * hept.central_angle.cos();
    let constructed_residual = cyclotomic_residual(constructed_y).abs();
    let passed = roots.iter().all(|r| r.2 <= 1e-12) && numeric_deviation <= 1e-12 && constructed_residual <= 1e-9;
    Ok(CyclotomicReport { roots, numeric_deviation, constructed_y, constructed_residual, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if (f(mid) > 0.0) == (f(lo) > 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    #[test]
    fn point_i_unit_radius() {
        let p = heptagon_point_i(1.0).unwrap();
        let oracle = bisect(|x| x * x * x - 7.0 / 3.0 * x - 7.0 / 27.0, 1.0, 2.0);
        assert!((p.x - oracle).abs() < 1e-10);
        assert!((p.x - 1.58031).abs() < 1e-5);
        let x = p.x;
        assert!(((x - 4.0 / 3.0) * (x + 2.0 / 3.0).powi(2) - (x - 1.0 / 3.0)).abs() < 1e-10);
        assert!((p.r_squared - 7.0 / 9.0).abs() < 1e-12);
        // IA = 2cos(2π/7)
        assert!((p.i.x + 2.0 * (2.0 * PI / 7.0).cos()).abs() < 1e-10);
    }

    #[test]
    fn point_i_scales_with_radius() {
        let one = heptagon_point_i(1.0).unwrap();
        let two = heptagon_point_i(2.0).unwrap();
        assert!((two.x - 2.0 * one.x).abs() <= 1e-12 * two.x);
        assert!(heptagon_point_i(0.0).is_err());
    }

    #[test]
    fn unit_heptagon() {
        let h = heptagon_construct(&Circle::unit()).unwrap();
        assert!((h.side - 0.8677674782351162).abs() < 1e-9);
        assert!((h.central_angle - 2.0 * PI / 7.0).abs() < 1e-9);
        assert!((h.vertex_angle - PI / 7.0).abs() < 1e-9);
        assert_eq!(h.vertices.len(), 7);
        for k in 0..7 {
            let s = h.vertices[k].dist(h.vertices[(k + 1) % 7]);
            assert!((s - h.side).abs() < 1e-9);
        }
        assert!(h.vertices[1].dist(h.scene.get("E").unwrap()) < 1e-12);
    }

    #[test]
    fn translated_heptagon() {
        let c = Circle::new(Point::new(3.0, -2.0), 2.5).unwrap();
        let h = heptagon_construct(&c).unwrap();
        assert!((h.side - 2.5 * 2.0 * (PI / 7.0).sin()).abs() < 1e-9);
        for v in &h.vertices {
            assert!(c.distance(*v) < 1e-12);
        }
    }

    #[test]
    fn cyclotomic() {
        let r = heptagon_cyclotomic_check().unwrap();
        assert!(r.passed);
        assert!((r.roots[0].1 - 1.246979603717467).abs() < 1e-12);
        assert!((r.roots[1].1 + 0.4450418679126288).abs() < 1e-12);
        assert_eq!(cyclotomic_residual(1.0), -1.0);
    }
}
