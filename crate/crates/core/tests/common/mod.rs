#![allow(dead_code)]

use vieta::geometry::{Circle, Point};

/// Root of a continuous `f` with a sign change on `[lo, hi]`.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let flo = f(lo);
    assert!(flo * f(hi) <= 0.0, "no sign change on [{lo}, {hi}]");
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if (f(mid) < 0.0) == (flo < 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Rotation by `angle`, optional reflection in the x axis, then translation.
#[derive(Clone, Copy, Debug)]
pub struct RigidMotion {
    pub angle: f64,
    pub reflect: bool,
    pub shift: Point,
}

impl RigidMotion {
    pub fn apply(&self, p: Point) -> Point {
        let p = if self.reflect { Point::new(p.x, -p.y) } else { p };
        Point::polar(1.0, self.angle) * p.x + Point::polar(1.0, self.angle + std::f64::consts::FRAC_PI_2) * p.y
            + self.shift
    }

    pub fn circle(&self, c: &Circle) -> Circle {
        Circle { center: self.apply(c.center), radius: c.radius }
    }
}

pub fn circle_distance(a: &Circle, b: &Circle) -> f64 {
    a.center.dist(b.center).max((a.radius - b.radius).abs())
}

/// Largest distance from a circle in `a` to its nearest partner in `b`, with
/// equal counts required.
pub fn set_distance(a: &[Circle], b: &[Circle]) -> f64 {
    if a.len() != b.len() {
        return f64::INFINITY;
    }
    let one_way = |x: &[Circle], y: &[Circle]| {
        x.iter()
            .map(|c| y.iter().map(|d| circle_distance(c, d)).fold(f64::INFINITY, f64::min))
            .fold(0.0, f64::max)
    };
    one_way(a, b).max(one_way(b, a))
}
