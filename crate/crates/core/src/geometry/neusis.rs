use std::f64::consts::PI;

use serde::Serialize;

use super::{GeometryError, Line, Locus, Point, GEOMETRIC_TOLERANCE};

/// Samples of the direction angle over a half turn.
pub const NEUSIS_SAMPLES: usize = 3600;

/// A line through `pivot` on which `locus1` and `locus2` cut off a segment of
/// length `span`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NeusisProblem {
    pub pivot: Point,
    pub locus1: Locus,
    pub locus2: Locus,
    pub span: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NeusisSolution {
    /// Direction angle of the line in `[0, π)`.
    pub t: f64,
    pub line: Line,
    /// Point on `locus1`.
    pub b: Point,
    /// Point on `locus2`.
    pub c: Point,
    /// Largest of the span error and the two locus distances.
    pub residual: f64,
}

impl NeusisProblem {
    pub fn new(pivot: Point, locus1: Locus, locus2: Locus, span: f64) -> Result<Self, GeometryError> {
        let p = NeusisProblem { pivot, locus1, locus2, span };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), GeometryError> {
        if !self.pivot.is_finite() || !self.span.is_finite() {
            return Err(GeometryError::NonFinite);
        }
        if self.span <= 0.0 {
            return Err(GeometryError::Degenerate("neusis span must be positive"));
        }
        for locus in [&self.locus1, &self.locus2] {
            if let Locus::Circle(c) = locus {
                if !(c.radius > 0.0) || !c.center.is_finite() {
                    return Err(GeometryError::Degenerate("circle locus"));
                }
            }
        }
        let same = match (&self.locus1, &self.locus2) {
            (Locus::Line(l), Locus::Line(m)) => {
                let (a, b, c) = l.coefficients();
                let (d, e, f) = m.coefficients();
                let close = |s: f64| (a - s * d).abs() + (b - s * e).abs() + (c - s * f).abs() < 1e-14;
                close(1.0) || close(-1.0)
            }
            (Locus::Circle(c), Locus::Circle(d)) => c == d,
            _ => false,
        };
        if same {
            return Err(GeometryError::Degenerate("identical loci"));
        }
        if self.locus1.distance(self.pivot) < 1e-14 && self.locus2.distance(self.pivot) < 1e-14 {
            return Err(GeometryError::Degenerate("pivot lies on both loci"));
        }
        Ok(())
    }

    /// Direction at offset `h` from the scan base. Offsets keep full relative
    /// precision next to the base, where a line locus has its pole.
    fn direction(&self, h: f64) -> Point {
        let d0 = self.scan_base();
        let perp = Point::new(-d0.y, d0.x);
        d0 * h.cos() + perp * h.sin()
    }

    /// Signed distance along direction `u` from the pivot to the locus, on
    /// the given branch.
    fn reach(&self, locus: &Locus, branch: usize, u: Point) -> Option<f64> {
        match locus {
            Locus::Line(l) => {
                let nu = l.normal().dot(u);
                if nu.abs() < 1e-300 {
                    return None;
                }
                Some(-l.signed_distance(self.pivot) / nu)
            }
            Locus::Circle(c) => {
                let w = self.pivot - c.center;
                let h = u.dot(w);
                let k = w.dot(w) - c.radius * c.radius;
                let disc = h * h - k;
                if disc < 0.0 {
                    return None;
                }
                let root = disc.sqrt();
                // roots of s² + 2hs + k, each computed without cancellation
                let (plus, minus) = if h > 0.0 {
                    let m = -h - root;
                    (if m != 0.0 { k / m } else { 0.0 }, m)
                } else {
                    let p = -h + root;
                    (p, if p != 0.0 { k / p } else { 0.0 })
                };
                Some(if branch == 0 { plus } else { minus })
            }
        }
    }

    fn branches(locus: &Locus) -> usize {
        match locus {
            Locus::Line(_) => 1,
            Locus::Circle(_) => 2,
        }
    }

    fn gap(&self, b1: usize, b2: usize, sigma: f64, t: f64) -> Option<f64> {
        let u = self.direction(t);
        let s1 = self.reach(&self.locus1, b1, u)?;
        let s2 = self.reach(&self.locus2, b2, u)?;
        let g = s1 - s2 - sigma * self.span;
        g.is_finite().then_some(g)
    }

    fn candidate(&self, b1: usize, b2: usize, t: f64) -> Option<NeusisSolution> {
        let u = self.direction(t);
        let b = self.pivot + u * self.reach(&self.locus1, b1, u)?;
        let c = self.pivot + u * self.reach(&self.locus2, b2, u)?;
        let residual = (b.dist(c) - self.span)
            .abs()
            .max(self.locus1.distance(b))
            .max(self.locus2.distance(c));
        let line = Line::new(-u.y, u.x, -u.y * self.pivot.x + u.x * self.pivot.y).ok()?;
        let t = u.y.atan2(u.x).rem_euclid(PI);
        Some(NeusisSolution { t, line, b, c, residual })
    }

    /// Unit direction where the scan begins: parallel to a line locus when
    /// there is one.
    fn scan_base(&self) -> Point {
        match (self.locus1, self.locus2) {
            (Locus::Line(l), _) | (Locus::Circle(_), Locus::Line(l)) => {
                let n = l.normal();
                Point::new(-n.y, n.x)
            }
            (Locus::Circle(_), Locus::Circle(_)) => Point::new(1.0, 0.0),
        }
    }
}

fn bisect(f: impl Fn(f64) -> Option<f64>, mut lo: f64, mut hi: f64, flo: f64) -> Option<f64> {
    let mut flo = flo;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm == 0.0 {
            return Some(mid);
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Golden-section minimization of `|f|` over `[lo, hi]`.
fn minimize_abs(f: impl Fn(f64) -> Option<f64>, mut lo: f64, mut hi: f64) -> Option<f64> {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let mut f1 = f(x1)?.abs();
    let mut f2 = f(x2)?.abs();
    for _ in 0..200 {
        if hi - lo <= f64::EPSILON * hi.abs().max(1.0) {
            break;
        }
        if f1 < f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1)?.abs();
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2)?.abs();
        }
    }
    Some(if f1 < f2 { x1 } else { x2 })
}

/// Every line through the pivot on which the loci cut off the span.
///
/// The direction angle is sampled at [`NEUSIS_SAMPLES`] points over a half
/// turn, starting at a pole of a line locus, plus points crowding toward
/// both ends. Sign changes of the signed gap
/// are bisected to full precision; local minima of its magnitude are refined
/// to catch tangential solutions. Candidates that converge onto a pole fail
/// the residual check and are dropped.
pub fn solve_neusis(p: &NeusisProblem) -> Result<Vec<NeusisSolution>, GeometryError> {
    p.validate()?;
    let t0 = 0.0;
    let step = PI / NEUSIS_SAMPLES as f64;
    // log-spaced extra samples crowd toward both ends, where a solution
    // next to a pole would otherwise fall inside the first interval
    let mut ts: Vec<f64> = (0..=NEUSIS_SAMPLES).map(|i| t0 + i as f64 * step).collect();
    for j in 1..=60 {
        let h = step * 10f64.powf(-j as f64 / 4.0);
        ts.push(t0 + h);
        ts.push(t0 + PI - h);
    }
    ts.sort_by(f64::total_cmp);
    ts.dedup();
    let samples = ts.len() - 1;
    let mut found: Vec<NeusisSolution> = Vec::new();
    // tangential roots are only located to about √ε in t
    let loose = 1e-6 * (1.0 + p.span);
    let mut accept = |cand: Option<NeusisSolution>, tangential: bool| {
        let Some(s) = cand else { return };
        if s.residual > GEOMETRIC_TOLERANCE {
            return;
        }
        let duplicate = found.iter().any(|o| {
            let gap = o.b.dist(s.b) + o.c.dist(s.c);
            gap < 1e-9 || (tangential && gap < loose)
        });
        if !duplicate {
            found.push(s);
        }
    };

    let mut combos = Vec::new();
    for b1 in 0..NeusisProblem::branches(&p.locus1) {
        for b2 in 0..NeusisProblem::branches(&p.locus2) {
            for sigma in [1.0, -1.0] {
                let vals: Vec<Option<f64>> = ts.iter().map(|&t| p.gap(b1, b2, sigma, t)).collect();
                combos.push((b1, b2, sigma, vals));
            }
        }
    }
    for (b1, b2, sigma, vals) in &combos {
        let (b1, b2, sigma) = (*b1, *b2, *sigma);
        let g = |t: f64| p.gap(b1, b2, sigma, t);
        for i in 0..samples {
            let (Some(a), Some(b)) = (vals[i], vals[i + 1]) else { continue };
            if a == 0.0 {
                accept(p.candidate(b1, b2, ts[i]), false);
            } else if (a > 0.0) != (b > 0.0) && b != 0.0 {
                accept(bisect(g, ts[i], ts[i + 1], a).and_then(|t| p.candidate(b1, b2, t)), false);
            }
        }
    }
    for (b1, b2, sigma, vals) in &combos {
        let (b1, b2, sigma) = (*b1, *b2, *sigma);
        let g = |t: f64| p.gap(b1, b2, sigma, t);
        for i in 1..samples {
            let (Some(a), Some(m), Some(b)) = (vals[i - 1], vals[i], vals[i + 1]) else {
                continue;
            };
            let same_sign = (a > 0.0) == (m > 0.0) && (m > 0.0) == (b > 0.0);
            if same_sign && m.abs() <= a.abs() && m.abs() <= b.abs() {
                accept(minimize_abs(g, ts[i - 1], ts[i + 1]).and_then(|t| p.candidate(b1, b2, t)), true);
            }
        }
    }
    found.sort_by(|a, b| a.t.total_cmp(&b.t));
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Circle;

    #[test]
    fn parallel_lines_two_solutions() {
        let p = NeusisProblem::new(
            Point::ORIGIN,
            Locus::Line(Line::vertical(1.0)),
            Locus::Line(Line::vertical(2.0)),
            2.0,
        )
        .unwrap();
        let sols = solve_neusis(&p).unwrap();
        assert_eq!(sols.len(), 2);
        // |B - C| = 1 / |cos t|
        assert!((sols[0].t - PI / 3.0).abs() < 1e-13);
        assert!((sols[1].t - 2.0 * PI / 3.0).abs() < 1e-13);
        for s in &sols {
            assert!(s.residual <= 1e-10);
            assert!(s.line.distance(Point::ORIGIN) < 1e-14);
        }
    }

    #[test]
    fn tangential_perpendicular_solution() {
        let p = NeusisProblem::new(
            Point::ORIGIN,
            Locus::Line(Line::horizontal(0.0)),
            Locus::Line(Line::horizontal(1.0)),
            1.0,
        )
        .unwrap();
        let sols = solve_neusis(&p).unwrap();
        assert_eq!(sols.len(), 1);
        let s = sols[0];
        assert!((s.t - PI / 2.0).abs() < 1e-7);
        assert!(s.b.dist(Point::ORIGIN) < 1e-12);
        assert!(s.c.dist(Point::new(0.0, 1.0)) < 1e-7);
    }

    #[test]
    fn circle_and_line_postconditions() {
        let e = Point::polar(1.0, 1.0);
        let p = NeusisProblem::new(
            e,
            Locus::Circle(Circle::unit()),
            Locus::Line(Line::horizontal(0.0)),
            1.0,
        )
        .unwrap();
        let sols = solve_neusis(&p).unwrap();
        assert!(!sols.is_empty());
        for s in sols {
            assert!(s.line.distance(e) < 1e-12);
            assert!(Circle::unit().distance(s.b) <= 1e-10);
            assert!(s.c.y.abs() <= 1e-10);
            assert!((s.b.dist(s.c) - 1.0).abs() <= 1e-10);
        }
    }

    #[test]
    fn degenerate_inputs() {
        let l = Locus::Line(Line::horizontal(0.0));
        assert!(NeusisProblem::new(Point::ORIGIN, l, Locus::Line(Line::vertical(0.0)), 1.0).is_err());
        assert!(NeusisProblem::new(Point::new(0.0, 1.0), l, l, 1.0).is_err());
        assert!(NeusisProblem::new(Point::new(0.0, 1.0), l, Locus::Line(Line::vertical(0.0)), 0.0).is_err());
    }
}
