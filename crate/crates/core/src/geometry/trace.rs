use serde::Serialize;

use super::{Circle, GeometryError, Line, Point};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Shape {
    Point { x: f64, y: f64 },
    Line { a: f64, b: f64, c: f64 },
    Circle { cx: f64, cy: f64, r: f64 },
    Value { value: f64 },
}

impl From<Point> for Shape {
    fn from(p: Point) -> Self {
        Shape::Point { x: p.x, y: p.y }
    }
}

impl From<Line> for Shape {
    fn from(l: Line) -> Self {
        let (a, b, c) = l.coefficients();
        Shape::Line { a, b, c }
    }
}

impl From<Circle> for Shape {
    fn from(c: Circle) -> Self {
        Shape::Circle { cx: c.center.x, cy: c.center.y, r: c.radius }
    }
}

impl From<f64> for Shape {
    fn from(value: f64) -> Self {
        Shape::Value { value }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SceneObject {
    pub label: String,
    #[serde(flatten)]
    pub shape: Shape,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceStep {
    pub name: String,
    pub objects: Vec<SceneObject>,
    pub assertion: String,
    pub residual: f64,
    pub tol: f64,
}

impl TraceStep {
    pub fn passed(&self) -> bool {
        self.residual <= self.tol
    }
}

/// Ordered record of a construction; each step carries an assertion and the
/// residual by which it holds.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ConstructionTrace {
    pub steps: Vec<TraceStep>,
}

impl ConstructionTrace {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn step<S: Into<Shape>>(
        &mut self,
        name: &str,
        objects: impl IntoIterator<Item = (&'static str, S)>,
        assertion: &str,
        residual: f64,
        tol: f64,
    ) -> &mut Self {
        self.steps.push(TraceStep {
            name: name.to_string(),
            objects: objects
                .into_iter()
                .map(|(label, s)| SceneObject { label: label.to_string(), shape: s.into() })
                .collect(),
            assertion: assertion.to_string(),
            residual: residual.abs(),
            tol,
        });
        self
    }

    pub fn extend(&mut self, prefix: &str, other: ConstructionTrace) {
        for mut s in other.steps {
            s.name = format!("{prefix}: {}", s.name);
            self.steps.push(s);
        }
    }

    pub fn find(&self, name: &str) -> Option<&TraceStep> {
        self.steps.iter().find(|s| s.name == name)
    }

    pub fn is_verified(&self) -> bool {
        self.steps.iter().all(|s| s.passed() && !s.residual.is_nan())
    }

    /// First failing step as an error.
    pub fn verify(&self) -> Result<(), GeometryError> {
        match self.steps.iter().find(|s| !s.passed() || s.residual.is_nan()) {
            None => Ok(()),
            Some(s) => Err(GeometryError::TraceFailed {
                step: s.name.clone(),
                residual: s.residual,
                tol: s.tol,
            }),
        }
    }
}
