//! Circles tangent to three given circles, and centers of similitude.
//!
//! For each of the eight tangency orientations `σ ∈ {±1}³` the conditions
//! `|P - O_i| = |r + σ_i r_i|` are squared and subtracted pairwise, leaving
//! two linear equations in `(x, y, r)`. Their solution line is substituted
//! into the first condition, giving a quadratic. `σ_i = +1` is external
//! tangency, `σ_i = -1` internal.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{Circle, GeometryError, Point, Scene};

/// Merge distance for solutions in `(x, y, r)`.
pub const DEDUP_DISTANCE: f64 = 1e-8;
pub const TANGENCY_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ApolloniusError {
    #[error("degenerate configuration: circles {0} and {1} {2}")]
    DegeneratePair(usize, usize, &'static str),
    #[error("degenerate configuration: {0}")]
    Degenerate(&'static str),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SimilitudeKind {
    External,
    Internal,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "at", rename_all = "kebab-case")]
pub enum SimilitudeCenter {
    Finite { point: Point, kind: SimilitudeKind },
    /// Equal radii: the external tangents are parallel to `direction`.
    AtInfinity { direction: Point, kind: SimilitudeKind },
}

impl SimilitudeCenter {
    pub fn point(&self) -> Option<Point> {
        match self {
            SimilitudeCenter::Finite { point, .. } => Some(*point),
            SimilitudeCenter::AtInfinity { .. } => None,
        }
    }
}

/// The point dividing `O1 O2` externally or internally in the ratio `r1 : r2`.
pub fn similitude_center(
    c1: &Circle,
    c2: &Circle,
    kind: SimilitudeKind,
) -> Result<SimilitudeCenter, ApolloniusError> {
    let (o1, o2, r1, r2) = (c1.center, c2.center, c1.radius, c2.radius);
    if o1 == o2 && r1 == r2 {
        return Err(ApolloniusError::DegeneratePair(1, 2, "are identical"));
    }
    match kind {
        SimilitudeKind::External if r1 == r2 => {
            Ok(SimilitudeCenter::AtInfinity { direction: (o2 - o1).unit(), kind })
        }
        SimilitudeKind::External => Ok(SimilitudeCenter::Finite {
            point: (o1 * r2 - o2 * r1) * (1.0 / (r2 - r1)),
            kind,
        }),
        SimilitudeKind::Internal => Ok(SimilitudeCenter::Finite {
            point: (o1 * r2 + o2 * r1) * (1.0 / (r2 + r1)),
            kind,
        }),
    }
}

/// Tangency signs, `+1` external and `-1` internal, one per input circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct TangencyOrientation(pub [i8; 3]);

impl TangencyOrientation {
    pub fn all() -> [TangencyOrientation; 8] {
        let mut out = [TangencyOrientation([1, 1, 1]); 8];
        for (m, o) in out.iter_mut().enumerate() {
            for i in 0..3 {
                o.0[i] = if m >> i & 1 == 0 { 1 } else { -1 };
            }
        }
        out
    }

    fn sigma(&self, i: usize) -> f64 {
        f64::from(self.0[i])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApolloniusSolution {
    pub circle: Circle,
    /// Every orientation under which this circle was found.
    pub orientations: Vec<TangencyOrientation>,
    /// `| |P - O_i| - |r + σ_i r_i| |` for the first orientation.
    pub residuals: [f64; 3],
}

impl ApolloniusSolution {
    pub fn orientation(&self) -> TangencyOrientation {
        self.orientations[0]
    }
}

fn residuals(circles: &[Circle; 3], o: TangencyOrientation, c: &Circle) -> [f64; 3] {
    let mut out = [0.0; 3];
    for i in 0..3 {
        let want = (c.radius + o.sigma(i) * circles[i].radius).abs();
        out[i] = (c.center.dist(circles[i].center) - want).abs();
    }
    out
}

fn within_tolerance(circles: &[Circle; 3], res: &[f64; 3]) -> bool {
    (0..3).all(|i| res[i] <= TANGENCY_TOLERANCE * (1.0 + circles[i].radius))
}

type V3 = [f64; 3];

fn cross(a: V3, b: V3) -> V3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn dot(a: V3, b: V3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: V3) -> f64 {
    dot(a, a).sqrt()
}

/// Real roots of `a s² + b s + c`, treating a slightly negative discriminant
/// as a double root.
fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let scale = b.abs().max((a * c).abs().sqrt()).max(f64::MIN_POSITIVE);
    if a.abs() <= 1e-14 * scale {
        return if b != 0.0 { vec![-c / b] } else { Vec::new() };
    }
    let mut disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        if disc >= -1e-12 * (b * b + (4.0 * a * c).abs()) {
            disc = 0.0;
        } else {
            return Vec::new();
        }
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    if q == 0.0 {
        return vec![0.0];
    }
    vec![q / a, c / q]
}

/// Newton iteration on the three unsquared tangency conditions.
fn polish(circles: &[Circle; 3], o: TangencyOrientation, start: V3) -> V3 {
    let f = |v: V3| -> V3 {
        let p = Point::new(v[0], v[1]);
        let mut out = [0.0; 3];
        for i in 0..3 {
            out[i] = p.dist(circles[i].center) - (v[2] + o.sigma(i) * circles[i].radius).abs();
        }
        out
    };
    let mut best = start;
    let mut best_norm = norm(f(start));
    for _ in 0..6 {
        let p = Point::new(best[0], best[1]);
        let mut rows = [[0.0; 3]; 3];
        for i in 0..3 {
            let d = p - circles[i].center;
            let dist = d.norm();
            if dist == 0.0 {
                return best;
            }
            let s = (best[2] + o.sigma(i) * circles[i].radius).signum();
            rows[i] = [d.x / dist, d.y / dist, -s];
        }
        let det = dot(rows[0], cross(rows[1], rows[2]));
        if det.abs() < 1e-300 {
            break;
        }
        let fv = f(best);
        // Cramer's rule on J Δ = f
        let cols = [
            [rows[0][0], rows[1][0], rows[2][0]],
            [rows[0][1], rows[1][1], rows[2][1]],
            [rows[0][2], rows[1][2], rows[2][2]],
        ];
        let mut delta = [0.0; 3];
        for (k, d) in delta.iter_mut().enumerate() {
            let mut c = cols;
            c[k] = fv;
            *d = dot(c[0], cross(c[1], c[2])) / dot(cols[0], cross(cols[1], cols[2]));
        }
        let next = [best[0] - delta[0], best[1] - delta[1], best[2] - delta[2]];
        let n = norm(f(next));
        if !(n < best_norm) {
            break;
        }
        best = next;
        best_norm = n;
    }
    best
}

fn check_pairs(circles: &[Circle; 3]) -> Result<(), ApolloniusError> {
    for c in circles {
        if !(c.center.is_finite() && c.radius.is_finite()) {
            return Err(GeometryError::NonFinite.into());
        }
        if c.radius <= 0.0 {
            return Err(ApolloniusError::Degenerate("non-positive radius"));
        }
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        if circles[i].center == circles[j].center {
            return Err(ApolloniusError::DegeneratePair(i + 1, j + 1, "are concentric"));
        }
    }
    Ok(())
}

fn solve_orientation(
    circles: &[Circle; 3],
    o: TangencyOrientation,
) -> Result<Vec<Circle>, ApolloniusError> {
    let [c1, c2, c3] = circles;
    let row = |c: &Circle, i: usize| -> (V3, f64) {
        let a = [
            2.0 * (c.center.x - c1.center.x),
            2.0 * (c.center.y - c1.center.y),
            2.0 * (o.sigma(i) * c.radius - o.sigma(0) * c1.radius),
        ];
        let w = (c.center.dot(c.center) - c.radius * c.radius)
            - (c1.center.dot(c1.center) - c1.radius * c1.radius);
        (a, w)
    };
    let (a1, w1) = row(c2, 1);
    let (a2, w2) = row(c3, 2);
    let n = cross(a1, a2);
    let scale = norm(a1) * norm(a2);
    if norm(n) <= 1e-12 * scale {
        // dependent rows: consistent means a one-parameter family
        let k = if norm(a1) >= norm(a2) { dot(a2, a1) / dot(a1, a1) } else { dot(a1, a2) / dot(a2, a2) };
        let (big, small) = if norm(a1) >= norm(a2) { (w1, w2) } else { (w2, w1) };
        if (small - k * big).abs() <= 1e-12 * (small.abs() + big.abs()).max(1.0) {
            return Err(ApolloniusError::Degenerate("tangency conditions are dependent (collinear centers with a continuum of solutions)"));
        }
        return Ok(Vec::new());
    }
    // particular solution in the row space: x0 = Aᵀ (A Aᵀ)⁻¹ w
    let (g11, g12, g22) = (dot(a1, a1), dot(a1, a2), dot(a2, a2));
    let det = g11 * g22 - g12 * g12;
    let l1 = (g22 * w1 - g12 * w2) / det;
    let l2 = (g11 * w2 - g12 * w1) / det;
    let x0 = [l1 * a1[0] + l2 * a2[0], l1 * a1[1] + l2 * a2[1], l1 * a1[2] + l2 * a2[2]];
    let nn = norm(n);
    let n = [n[0] / nn, n[1] / nn, n[2] / nn];

    let (dx, dy, dr) = (x0[0] - c1.center.x, x0[1] - c1.center.y, x0[2] + o.sigma(0) * c1.radius);
    let qa = n[0] * n[0] + n[1] * n[1] - n[2] * n[2];
    let qb = 2.0 * (dx * n[0] + dy * n[1] - dr * n[2]);
    let qc = dx * dx + dy * dy - dr * dr;

    let mut out = Vec::new();
    for s in quadratic_roots(qa, qb, qc) {
        let v = [x0[0] + s * n[0], x0[1] + s * n[1], x0[2] + s * n[2]];
        let v = polish(circles, o, v);
        let r = v[2];
        let size = circles.iter().map(|c| c.radius + c.center.norm()).fold(0.0, f64::max);
        if !(r > 1e-12 * size) || !r.is_finite() {
            continue;
        }
        let circle = Circle { center: Point::new(v[0], v[1]), radius: r };
        if circles.iter().any(|c| close(c, &circle)) {
            continue;
        }
        out.push(circle);
    }
    Ok(out)
}

fn close(a: &Circle, b: &Circle) -> bool {
    let d = (a.center.x - b.center.x).powi(2) + (a.center.y - b.center.y).powi(2) + (a.radius - b.radius).powi(2);
    d.sqrt() <= DEDUP_DISTANCE
}

/// All circles tangent to the three inputs, merged across orientations and
/// sorted by `(x, y, r)`.
pub fn solve_ccc(c1: &Circle, c2: &Circle, c3: &Circle) -> Result<Vec<ApolloniusSolution>, ApolloniusError> {
    let circles = [*c1, *c2, *c3];
    check_pairs(&circles)?;
    let mut found: Vec<ApolloniusSolution> = Vec::new();
    for o in TangencyOrientation::all() {
        for circle in solve_orientation(&circles, o)? {
            let res = residuals(&circles, o, &circle);
            if !within_tolerance(&circles, &res) {
                continue;
            }
            match found.iter_mut().find(|s| close(&s.circle, &circle)) {
                Some(s) => {
                    if !s.orientations.contains(&o) {
                        s.orientations.push(o);
                    }
                }
                None => found.push(ApolloniusSolution { circle, orientations: vec![o], residuals: res }),
            }
        }
    }
    for s in &mut found {
        s.orientations.sort();
        s.residuals = residuals(&circles, s.orientations[0], &s.circle);
    }
    found.sort_by(|a, b| {
        a.circle
            .center
            .x
            .total_cmp(&b.circle.center.x)
            .then(a.circle.center.y.total_cmp(&b.circle.center.y))
            .then(a.circle.radius.total_cmp(&b.circle.radius))
    });
    Ok(found)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairRelation {
    Separate,
    ExternallyTangent,
    Intersecting,
    InternallyTangent,
    Contained,
    Concentric,
}

pub fn pair_relation(a: &Circle, b: &Circle) -> PairRelation {
    let d = a.center.dist(b.center);
    let tol = 1e-9 * (1.0 + a.radius + b.radius);
    let (sum, diff) = (a.radius + b.radius, (a.radius - b.radius).abs());
    if d == 0.0 {
        PairRelation::Concentric
    } else if (d - sum).abs() <= tol {
        PairRelation::ExternallyTangent
    } else if (d - diff).abs() <= tol {
        PairRelation::InternallyTangent
    } else if d > sum {
        PairRelation::Separate
    } else if d < diff {
        PairRelation::Contained
    } else {
        PairRelation::Intersecting
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PairReport {
    pub pair: (usize, usize),
    pub relation: PairRelation,
    pub external_center: Option<SimilitudeCenter>,
    pub internal_center: Option<SimilitudeCenter>,
}

/// Pairwise relations, similitude centers and the realized solution count.
#[derive(Clone, Debug, Serialize)]
pub struct ConfigurationReport {
    pub pairs: Vec<PairReport>,
    /// `None` when the configuration is degenerate.
    pub solution_count: Option<usize>,
    pub degenerate: Option<String>,
}

pub fn classify_configuration(c1: &Circle, c2: &Circle, c3: &Circle) -> ConfigurationReport {
    let circles = [c1, c2, c3];
    let pairs = [(0, 1), (0, 2), (1, 2)]
        .into_iter()
        .map(|(i, j)| PairReport {
            pair: (i + 1, j + 1),
            relation: pair_relation(circles[i], circles[j]),
            external_center: similitude_center(circles[i], circles[j], SimilitudeKind::External).ok(),
            internal_center: similitude_center(circles[i], circles[j], SimilitudeKind::Internal).ok(),
        })
        .collect();
    let (solution_count, degenerate) = match solve_ccc(c1, c2, c3) {
        Ok(s) => (Some(s.len()), None),
        Err(e) => (None, Some(e.to_string())),
    };
    ConfigurationReport { pairs, solution_count, degenerate }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CircleSpec {
    pub cx: f64,
    pub cy: f64,
    pub r: f64,
}

impl CircleSpec {
    pub fn to_circle(self) -> Result<Circle, GeometryError> {
        Circle::new(Point::new(self.cx, self.cy), self.r)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApolloniusInput {
    pub circles: Vec<CircleSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolutionRecord {
    pub cx: f64,
    pub cy: f64,
    pub r: f64,
    pub orientations: Vec<[i8; 3]>,
    pub residuals: [f64; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApolloniusOutput {
    pub solutions: Vec<SolutionRecord>,
}

impl ApolloniusInput {
    pub fn circles(&self) -> Result<[Circle; 3], ApolloniusError> {
        if self.circles.len() != 3 {
            return Err(ApolloniusError::Degenerate("exactly three circles are required"));
        }
        Ok([self.circles[0].to_circle()?, self.circles[1].to_circle()?, self.circles[2].to_circle()?])
    }

    pub fn solve(&self) -> Result<ApolloniusOutput, ApolloniusError> {
        let [a, b, c] = self.circles()?;
        Ok(ApolloniusOutput::from(solve_ccc(&a, &b, &c)?.as_slice()))
    }
}

impl From<&[ApolloniusSolution]> for ApolloniusOutput {
    fn from(sols: &[ApolloniusSolution]) -> Self {
        ApolloniusOutput {
            solutions: sols
                .iter()
                .map(|s| SolutionRecord {
                    cx: s.circle.center.x,
                    cy: s.circle.center.y,
                    r: s.circle.radius,
                    orientations: s.orientations.iter().map(|o| o.0).collect(),
                    residuals: s.residuals,
                })
                .collect(),
        }
    }
}

/// Inputs labeled `C1..C3`, solutions `S1..`.
pub fn apollonius_scene(inputs: &[Circle; 3], solutions: &[ApolloniusSolution]) -> Scene {
    let mut scene = Scene::new();
    for (k, c) in inputs.iter().enumerate() {
        scene.circle(*c).point(&format!("C{}", k + 1), c.center);
    }
    for (k, s) in solutions.iter().enumerate() {
        scene.circle(s.circle).point(&format!("S{}", k + 1), s.circle.center);
    }
    scene
}
