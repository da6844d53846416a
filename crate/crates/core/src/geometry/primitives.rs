use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::GeometryError;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const ORIGIN: Point = Point { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn polar(r: f64, angle: f64) -> Self {
        Point::new(r * angle.cos(), r * angle.sin())
    }

    pub fn dot(self, o: Point) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Point) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Point) -> f64 {
        (self - o).norm()
    }

    pub fn unit(self) -> Point {
        self * (1.0 / self.norm())
    }

    pub fn midpoint(self, o: Point) -> Point {
        (self + o) * 0.5
    }

    pub fn rotate_about(self, center: Point, angle: f64) -> Point {
        let (s, c) = angle.sin_cos();
        let d = self - center;
        center + Point::new(c * d.x - s * d.y, s * d.x + c * d.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point {
    type Output = Point;
    fn mul(self, k: f64) -> Point {
        Point::new(self.x * k, self.y * k)
    }
}

impl Neg for Point {
    type Output = Point;
    fn neg(self) -> Point {
        Point::new(-self.x, -self.y)
    }
}

/// Angle `p-vertex-q` in `[0, π]`.
pub fn angle_at(vertex: Point, p: Point, q: Point) -> f64 {
    let (u, v) = (p - vertex, q - vertex);
    u.cross(v).abs().atan2(u.dot(v))
}

/// `a x + b y = c` with `a² + b² = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Line {
    a: f64,
    b: f64,
    c: f64,
}

impl Line {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self, GeometryError> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        let n = a.hypot(b);
        if n == 0.0 {
            return Err(GeometryError::Degenerate("line with zero normal"));
        }
        Ok(Line { a: a / n, b: b / n, c: c / n })
    }

    pub fn through(p: Point, q: Point) -> Result<Self, GeometryError> {
        let d = q - p;
        Line::new(-d.y, d.x, -d.y * p.x + d.x * p.y)
    }

    /// The line `y = k`.
    pub fn horizontal(k: f64) -> Self {
        Line { a: 0.0, b: 1.0, c: k }
    }

    /// The line `x = k`.
    pub fn vertical(k: f64) -> Self {
        Line { a: 1.0, b: 0.0, c: k }
    }

    pub fn coefficients(&self) -> (f64, f64, f64) {
        (self.a, self.b, self.c)
    }

    pub fn normal(&self) -> Point {
        Point::new(self.a, self.b)
    }

    pub fn direction(&self) -> Point {
        Point::new(-self.b, self.a)
    }

    pub fn signed_distance(&self, p: Point) -> f64 {
        self.a * p.x + self.b * p.y - self.c
    }

    pub fn distance(&self, p: Point) -> f64 {
        self.signed_distance(p).abs()
    }

    pub fn contains(&self, p: Point, tol: f64) -> bool {
        self.distance(p) <= tol
    }

    /// Intersection with another line, `None` when parallel.
    pub fn intersect(&self, o: &Line) -> Option<Point> {
        let det = self.a * o.b - self.b * o.a;
        if det == 0.0 {
            return None;
        }
        Some(Point::new(
            (self.c * o.b - self.b * o.c) / det,
            (self.a * o.c - self.c * o.a) / det,
        ))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Circle {
    pub center: Point,
    pub radius: f64,
}

impl Circle {
    pub fn new(center: Point, radius: f64) -> Result<Self, GeometryError> {
        if !(center.is_finite() && radius.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        if radius <= 0.0 {
            return Err(GeometryError::Degenerate("circle with non-positive radius"));
        }
        Ok(Circle { center, radius })
    }

    pub fn unit() -> Self {
        Circle { center: Point::ORIGIN, radius: 1.0 }
    }

    /// `| |p - center| - radius |`.
    pub fn distance(&self, p: Point) -> f64 {
        (p.dist(self.center) - self.radius).abs()
    }

    pub fn point_at(&self, angle: f64) -> Point {
        self.center + Point::polar(self.radius, angle)
    }

    /// Intersections with another circle, ordered by the sign of the cross
    /// product with the center line (left of `self -> other` first).
    pub fn intersect_circle(&self, o: &Circle) -> Vec<Point> {
        let d = o.center - self.center;
        let dist = d.norm();
        if dist == 0.0 {
            return Vec::new();
        }
        let along = (dist * dist + self.radius * self.radius - o.radius * o.radius) / (2.0 * dist);
        let h2 = self.radius * self.radius - along * along;
        if h2 < 0.0 {
            return Vec::new();
        }
        let u = d * (1.0 / dist);
        let base = self.center + u * along;
        let perp = Point::new(-u.y, u.x);
        if h2 == 0.0 {
            return vec![base];
        }
        let h = h2.sqrt();
        vec![base + perp * h, base - perp * h]
    }
}

/// One of the two curves a neusis segment runs between.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Locus {
    Line(Line),
    Circle(Circle),
}

impl Locus {
    pub fn distance(&self, p: Point) -> f64 {
        match self {
            Locus::Line(l) => l.distance(p),
            Locus::Circle(c) => c.distance(p),
        }
    }
}
