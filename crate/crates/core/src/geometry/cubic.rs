use num_complex::Complex64;
use serde::Serialize;

use super::{solve_trisection_cubic, ConstructionTrace, GeometryError};

/// Monic cubic `x³ + a2 x² + a1 x + a0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CubicProblem {
    pub a2: f64,
    pub a1: f64,
    pub a0: f64,
    /// Already of the form `x³ - 3x = b`.
    pub canonical: bool,
}

impl CubicProblem {
    pub fn monic(a2: f64, a1: f64, a0: f64) -> Result<Self, GeometryError> {
        if !(a2.is_finite() && a1.is_finite() && a0.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        Ok(CubicProblem { a2, a1, a0, canonical: a2 == 0.0 && a1 == -3.0 })
    }

    /// `a3 x³ + a2 x² + a1 x + a0`, divided through by `a3`.
    pub fn new(a3: f64, a2: f64, a1: f64, a0: f64) -> Result<Self, GeometryError> {
        if !a3.is_finite() {
            return Err(GeometryError::NonFinite);
        }
        if a3 == 0.0 {
            return Err(GeometryError::Degenerate("leading coefficient is zero"));
        }
        Self::monic(a2 / a3, a1 / a3, a0 / a3)
    }

    pub fn evaluate(&self, x: Complex64) -> Complex64 {
        ((x + self.a2) * x + self.a1) * x + self.a0
    }

    /// `|p(x)| / (|x|³ + |a2||x|² + |a1||x| + |a0|)`.
    pub fn relative_residual(&self, x: Complex64) -> f64 {
        let r = x.norm();
        let scale = ((r + self.a2.abs()) * r + self.a1.abs()) * r + self.a0.abs();
        if scale == 0.0 {
            return self.evaluate(x).norm();
        }
        self.evaluate(x).norm() / scale
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CubicMethod {
    /// Three real roots via angle trisection.
    Trisection,
    /// One real root by radicals, with its complex pair.
    Radical,
    /// Depressed form `t³ + q = 0`.
    PureCube,
}

#[derive(Clone, Debug, Serialize)]
pub struct CubicSolution {
    /// Ascending by real part, then imaginary part.
    pub roots: Vec<Complex64>,
    pub method: CubicMethod,
    pub relative_residuals: Vec<f64>,
    pub trace: Option<ConstructionTrace>,
}

impl CubicSolution {
    pub fn real_roots(&self) -> Vec<f64> {
        self.roots.iter().filter(|z| z.im == 0.0).map(|z| z.re).collect()
    }
}

fn complex_pair(t1: f64, p: f64) -> [Complex64; 2] {
    // remaining factor t² + t1 t + (t1² + p)
    let disc = -3.0 * t1 * t1 - 4.0 * p;
    if disc >= 0.0 {
        let s = disc.sqrt() / 2.0;
        [Complex64::new(-t1 / 2.0 - s, 0.0), Complex64::new(-t1 / 2.0 + s, 0.0)]
    } else {
        let s = (-disc).sqrt() / 2.0;
        [Complex64::new(-t1 / 2.0, -s), Complex64::new(-t1 / 2.0, s)]
    }
}

/// All roots of a monic cubic.
///
/// `x = t - a2/3` gives `t³ + pt + q = 0`. When `4p³ + 27q² < 0` the
/// substitution `t = λu`, `λ = √(-p/3)`, yields `u³ - 3u = v` with `|v| < 2`,
/// solved by trisection. Otherwise the single real root comes from radicals.
pub fn solve_cubic_general(problem: &CubicProblem) -> Result<CubicSolution, GeometryError> {
    let CubicProblem { a2, a1, a0, .. } = *problem;
    if !(a2.is_finite() && a1.is_finite() && a0.is_finite()) {
        return Err(GeometryError::NonFinite);
    }
    let shift = a2 / 3.0;
    let p = a1 - a2 * shift;
    let q = 2.0 * shift * shift * shift - shift * a1 + a0;
    let p_scale = a1.abs() + a2 * a2 / 3.0;
    let discriminant = 4.0 * p * p * p + 27.0 * q * q;

    let (ts, method, trace) = if p.abs() <= 4.0 * f64::EPSILON * p_scale {
        let t1 = (-q).cbrt();
        let w = Complex64::new(-0.5, 3f64.sqrt() / 2.0);
        let t = Complex64::new(t1, 0.0);
        let roots = if t1 == 0.0 { vec![t; 3] } else { vec![t, t * w, t * w.conj()] };
        (roots, CubicMethod::PureCube, None)
    } else if discriminant < 0.0 {
        let lambda = (-p / 3.0).sqrt();
        let v = (-q / (lambda * lambda * lambda)).clamp(-2.0, 2.0);
        let sol = solve_trisection_cubic(v)?;
        let roots = sol.roots.iter().map(|&u| Complex64::new(lambda * u, 0.0)).collect();
        (roots, CubicMethod::Trisection, Some(sol.trace))
    } else {
        let root = (q * q / 4.0 + p * p * p / 27.0).max(0.0).sqrt();
        // the larger-magnitude cube root avoids cancellation
        let u = if q > 0.0 { (-q / 2.0 - root).cbrt() } else { (-q / 2.0 + root).cbrt() };
        let t1 = if u == 0.0 { 0.0 } else { u - p / (3.0 * u) };
        let [z1, z2] = complex_pair(t1, p);
        (vec![Complex64::new(t1, 0.0), z1, z2], CubicMethod::Radical, None)
    };

    let mut roots: Vec<Complex64> = ts.into_iter().map(|t| t - shift).collect();
    for z in &mut roots {
        if z.im == 0.0 {
            *z = Complex64::new(polish_real(problem, z.re), 0.0);
        }
    }
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    let relative_residuals = roots.iter().map(|&z| problem.relative_residual(z)).collect();
    Ok(CubicSolution { roots, method, relative_residuals, trace })
}

/// Newton steps while the residual keeps dropping.
fn polish_real(problem: &CubicProblem, x: f64) -> f64 {
    let f = |x: f64| ((x + problem.a2) * x + problem.a1) * x + problem.a0;
    let df = |x: f64| (3.0 * x + 2.0 * problem.a2) * x + problem.a1;
    let mut best = x;
    for _ in 0..4 {
        let d = df(best);
        if d == 0.0 {
            break;
        }
        let next = best - f(best) / d;
        if !(f(next).abs() < f(best).abs()) {
            break;
        }
        best = next;
    }
    best
}
