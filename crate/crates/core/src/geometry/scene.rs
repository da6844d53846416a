use std::fmt::Write;

use serde::Serialize;

use super::{Circle, ConstructionTrace, Point, Shape};

/// Labeled points, segments and circles for a static figure.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Scene {
    pub points: Vec<(String, Point)>,
    pub segments: Vec<(Point, Point)>,
    pub circles: Vec<Circle>,
}

impl Scene {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn point(&mut self, label: &str, p: Point) -> &mut Self {
        self.points.push((label.to_string(), p));
        self
    }

    pub fn segment(&mut self, p: Point, q: Point) -> &mut Self {
        self.segments.push((p, q));
        self
    }

    pub fn circle(&mut self, c: Circle) -> &mut Self {
        self.circles.push(c);
        self
    }

    /// Every labeled point and circle recorded in a trace, first occurrence
    /// of each label kept.
    pub fn from_trace(trace: &ConstructionTrace) -> Self {
        let mut scene = Scene::new();
        for obj in trace.steps.iter().flat_map(|s| s.objects.iter()) {
            match obj.shape {
                Shape::Point { x, y } if scene.get(&obj.label).is_none() => {
                    scene.point(&obj.label, Point::new(x, y));
                }
                Shape::Circle { cx, cy, r } => {
                    if let Ok(c) = Circle::new(Point::new(cx, cy), r) {
                        if !scene.circles.contains(&c) {
                            scene.circle(c);
                        }
                    }
                }
                _ => {}
            }
        }
        scene
    }

    pub fn get(&self, label: &str) -> Option<Point> {
        self.points.iter().find(|(l, _)| l == label).map(|&(_, p)| p)
    }

    fn bounds(&self) -> (f64, f64, f64, f64) {
        let mut b = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
        let mut take = |x: f64, y: f64| {
            b = (b.0.min(x), b.1.min(y), b.2.max(x), b.3.max(y));
        };
        for (_, p) in &self.points {
            take(p.x, p.y);
        }
        for (p, q) in &self.segments {
            take(p.x, p.y);
            take(q.x, q.y);
        }
        for c in &self.circles {
            take(c.center.x - c.radius, c.center.y - c.radius);
            take(c.center.x + c.radius, c.center.y + c.radius);
        }
        if !b.0.is_finite() {
            return (-1.0, -1.0, 1.0, 1.0);
        }
        b
    }

    /// A standalone SVG document. The y axis points up, as in the figures.
    pub fn to_svg(&self) -> String {
        let (x0, y0, x1, y1) = self.bounds();
        let extent = (x1 - x0).max(y1 - y0).max(1e-9);
        let margin = 0.08 * extent;
        let stroke = extent / 400.0;
        let font = extent / 30.0;
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}">"#,
            num(x0 - margin),
            num(-y1 - margin),
            num(x1 - x0 + 2.0 * margin),
            num(y1 - y0 + 2.0 * margin)
        );
        let _ = writeln!(s, r#"<g fill="none" stroke="black" stroke-width="{}">"#, num(stroke));
        for c in &self.circles {
            let _ = writeln!(
                s,
                r#"<circle cx="{}" cy="{}" r="{}"/>"#,
                num(c.center.x),
                num(-c.center.y),
                num(c.radius)
            );
        }
        for (p, q) in &self.segments {
            let _ = writeln!(
                s,
                r#"<line x1="{}" y1="{}" x2="{}" y2="{}"/>"#,
                num(p.x),
                num(-p.y),
                num(q.x),
                num(-q.y)
            );
        }
        s.push_str("</g>\n");
        let _ = writeln!(s, r#"<g font-family="serif" font-size="{}">"#, num(font));
        for (label, p) in &self.points {
            let _ = writeln!(
                s,
                r#"<circle cx="{}" cy="{}" r="{}"/><text x="{}" y="{}">{}</text>"#,
                num(p.x),
                num(-p.y),
                num(stroke * 2.5),
                num(p.x + font * 0.3),
                num(-p.y - font * 0.3),
                escape(label)
            );
        }
        s.push_str("</g>\n</svg>\n");
        s
    }
}

fn num(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
