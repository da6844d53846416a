use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use super::format::{csv, exact_num, fmt_complex, fmt_num, table};
use crate::exact::{numeric_roots, solve_quadratic_canonical, ExactError, ExactRational, DEFAULT_TOLERANCE};
use crate::geometry::{solve_cubic_general, ConstructionTrace, CubicProblem, GeometryError, Scene};
use crate::species::{bind_values, check_homogeneity, parse_species, to_modern, SpeciesError};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
    Csv,
    Svg,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PipelineRequest {
    pub species_text: String,
    pub bindings: BTreeMap<char, ExactRational>,
    pub output: OutputFormat,
}

impl PipelineRequest {
    pub fn new(species_text: &str, bindings: &[(char, i64)]) -> Self {
        PipelineRequest {
            species_text: species_text.to_string(),
            bindings: bindings
                .iter()
                .map(|&(l, v)| (l, ExactRational::from_integer(BigInt::from(v))))
                .collect(),
            output: OutputFormat::Table,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PipelineError {
    #[error("zetetic stage: {0}")]
    Species(#[from] SpeciesError),
    #[error("zetetic stage: the bound equation has no unknown term left")]
    NoUnknown,
    #[error("poristic stage: degree {0} is not supported (only 1, 2 and 3)")]
    UnsupportedDegree(usize),
    #[error("poristic stage: {0}")]
    Geometry(#[from] GeometryError),
    #[error("exegetic stage: {0}")]
    Exact(#[from] ExactError),
    #[error("exegetic stage: no geometric construction to draw for this equation")]
    NoFigure,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineRoot {
    pub re: f64,
    pub im: f64,
    /// Exact value when the root is rational.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
}

impl PipelineRoot {
    fn real(x: f64) -> Self {
        PipelineRoot { re: x, im: 0.0, exact: None }
    }

    fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ZeteticStage {
    pub species: String,
    pub modern: String,
    pub normal_form: String,
    pub dimension: u32,
    pub unknown: char,
    /// The bound polynomial, `lhs - rhs`.
    pub polynomial: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PoristicStage {
    pub degree: usize,
    pub method: String,
    pub roots: Vec<PipelineRoot>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExegeticKind {
    ConstructionTrace,
    NumericRoots,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExegeticStage {
    pub kind: ExegeticKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<ConstructionTrace>,
    pub numeric_roots: Vec<PipelineRoot>,
    /// Largest distance from a poristic root to the nearest numeric root.
    pub max_deviation: f64,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PipelineReport {
    pub zetetic: ZeteticStage,
    pub poristic: PoristicStage,
    pub exegetic: ExegeticStage,
}

fn sort_roots(roots: &mut [PipelineRoot]) {
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
}

fn to_f64(q: &ExactRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Parses, binds, solves and checks a species equation.
///
/// The first stage states the equation and substitutes the givens; the second
/// solves by degree (linear, completing the square, or the general cubic); the
/// third either carries the trisection construction for a cubic with three
/// real roots or cross-checks against the numeric root finder.
pub fn run_pipeline(req: &PipelineRequest) -> Result<PipelineReport, PipelineError> {
    let eq = parse_species(&req.species_text)?;
    let dimension = check_homogeneity(&eq)?;
    let modern = to_modern(&eq)?;
    let unknown = modern.unknown.ok_or(PipelineError::NoUnknown)?;
    let poly = bind_values(&eq, &req.bindings)?;
    let degree = poly.degree();
    if poly.is_zero() || degree == 0 {
        return Err(PipelineError::NoUnknown);
    }
    let zetetic = ZeteticStage {
        species: eq.to_string(),
        modern: modern.text,
        normal_form: modern.normal_form,
        dimension,
        unknown,
        polynomial: poly.to_string(),
    };

    let c: Vec<f64> = poly.coefficients().iter().map(to_f64).collect();
    let (method, mut roots, trace) = match degree {
        1 => {
            let root = -poly.coefficient(0) / poly.coefficient(1);
            let r = PipelineRoot { re: to_f64(&root), im: 0.0, exact: Some(root.to_string()) };
            ("linear".to_string(), vec![r], None)
        }
        2 => {
            // x² + bx + c0 = 0 is X² + bX = -c0
            let b = c[1] / c[2];
            let rhs = -c[0] / c[2];
            let roots = solve_quadratic_canonical(b, rhs)
                .into_iter()
                .flat_map(|r| std::iter::repeat_n(PipelineRoot::real(r.value), r.multiplicity as usize))
                .collect();
            ("completing the square".to_string(), roots, None)
        }
        3 => {
            let sol = solve_cubic_general(&CubicProblem::new(c[3], c[2], c[1], c[0])?)?;
            let method = serde_json::to_value(sol.method)
                .ok()
                .and_then(|v| v.as_str().map(str::to_string))
                .unwrap_or_default();
            let roots = sol.roots.iter().map(|z| PipelineRoot { re: z.re, im: z.im, exact: None }).collect();
            (format!("cubic ({method})"), roots, sol.trace)
        }
        d => return Err(PipelineError::UnsupportedDegree(d)),
    };
    sort_roots(&mut roots);

    let mut numeric: Vec<PipelineRoot> = numeric_roots(&poly, DEFAULT_TOLERANCE)?
        .roots
        .iter()
        .map(|r| PipelineRoot { re: r.re, im: r.im, exact: None })
        .collect();
    sort_roots(&mut numeric);
    let max_deviation = roots
        .iter()
        .map(|r| numeric.iter().map(|n| (n.value() - r.value()).norm()).fold(f64::INFINITY, f64::min))
        .fold(0.0, f64::max);
    let scale = 1.0 + roots.iter().map(|r| r.value().norm()).fold(0.0, f64::max);
    let mut verified = max_deviation <= 1e-8 * scale;
    let kind = match &trace {
        Some(t) => {
            verified &= t.is_verified();
            ExegeticKind::ConstructionTrace
        }
        None => ExegeticKind::NumericRoots,
    };
    Ok(PipelineReport {
        zetetic,
        poristic: PoristicStage { degree, method, roots },
        exegetic: ExegeticStage { kind, trace, numeric_roots: numeric, max_deviation, verified },
    })
}

impl PipelineReport {
    /// Positive real roots, the only ones admitted as answers historically.
    pub fn positive_roots(&self) -> Vec<f64> {
        self.poristic.roots.iter().filter(|r| r.im == 0.0 && r.re > 0.0).map(|r| r.re).collect()
    }

    pub fn render(&self, format: OutputFormat, digits: usize) -> Result<String, PipelineError> {
        let root_rows = |roots: &[PipelineRoot], full: bool| -> Vec<Vec<String>> {
            roots
                .iter()
                .map(|r| {
                    if full {
                        vec![exact_num(r.re), exact_num(r.im), r.exact.clone().unwrap_or_default()]
                    } else {
                        vec![fmt_complex(r.value(), digits), r.exact.clone().unwrap_or_default()]
                    }
                })
                .collect()
        };
        match format {
            OutputFormat::Json => Ok(serde_json::to_string_pretty(self).expect("report serializes")),
            OutputFormat::Csv => Ok(csv(&["re", "im", "exact"], &root_rows(&self.poristic.roots, true))),
            OutputFormat::Svg => {
                let trace = self.exegetic.trace.as_ref().ok_or(PipelineError::NoFigure)?;
                Ok(Scene::from_trace(trace).to_svg())
            }
            OutputFormat::Table => {
                let z = &self.zetetic;
                let mut s = String::new();
                s.push_str("zetetic\n");
                s.push_str(&format!("  species    {}\n", z.species));
                s.push_str(&format!("  modern     {}\n", z.modern));
                s.push_str(&format!("  normal     {}\n", z.normal_form));
                s.push_str(&format!("  dimension  {}\n", z.dimension));
                s.push_str(&format!("  bound      {} = 0\n", z.polynomial));
                s.push_str("poristic\n");
                s.push_str(&format!("  degree     {}\n", self.poristic.degree));
                s.push_str(&format!("  method     {}\n", self.poristic.method));
                if self.poristic.roots.is_empty() {
                    s.push_str("  no real roots\n");
                }
                let mut rows = root_rows(&self.poristic.roots, false);
                let header: &[&str] = if self.poristic.roots.iter().any(|r| r.exact.is_some()) {
                    &["root", "exact"]
                } else {
                    rows.iter_mut().for_each(|r| r.truncate(1));
                    &["root"]
                };
                for line in table(header, &rows).lines() {
                    if !self.poristic.roots.is_empty() {
                        s.push_str(&format!("  {}\n", line.trim_end()));
                    }
                }
                s.push_str("exegetic\n");
                match &self.exegetic.trace {
                    Some(t) => {
                        for step in &t.steps {
                            s.push_str(&format!(
                                "  {:<28} {} (residual {})\n",
                                step.name,
                                if step.passed() { "ok" } else { "FAILED" },
                                fmt_num(step.residual, 3)
                            ));
                        }
                    }
                    None => {
                        let roots: Vec<String> =
                            self.exegetic.numeric_roots.iter().map(|r| fmt_complex(r.value(), digits)).collect();
                        s.push_str(&format!("  numeric roots  {}\n", roots.join(", ")));
                    }
                }
                s.push_str(&format!(
                    "  verified   {} (max deviation {})\n",
                    self.exegetic.verified,
                    fmt_num(self.exegetic.max_deviation, 3)
                ));
                Ok(s)
            }
        }
    }
}

/// Reads an integer, fraction (`3/4`) or decimal (`-2.5`, `1e-3`) exactly.
pub fn parse_rational(text: &str) -> Result<ExactRational, String> {
    let t = text.trim();
    if let Ok(q) = ExactRational::from_str(t) {
        return Ok(q);
    }
    let err = || format!("'{text}' is not a rational number");
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(k) => (&t[..k], t[k + 1..].parse::<i32>().map_err(|_| err())?),
        None => (t, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let negative = int.starts_with('-');
    let int = int.trim_start_matches(['-', '+']);
    if int.is_empty() && frac.is_empty() || !(int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())) {
        return Err(err());
    }
    let digits: BigInt = format!("{int}{frac}").parse().map_err(|_| err())?;
    let shift = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut q = if shift >= 0 {
        ExactRational::from_integer(digits * num_traits::pow(ten, shift as usize))
    } else {
        ExactRational::new(digits, num_traits::pow(ten, (-shift) as usize))
    };
    if negative && !q.is_zero() {
        q = -q;
    }
    Ok(q)
}

/// Reads `B=6,C=16` into letter bindings.
pub fn parse_bindings(text: &str) -> Result<BTreeMap<char, ExactRational>, String> {
    let mut out = BTreeMap::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part.split_once('=').ok_or_else(|| format!("'{part}' is not of the form L=V"))?;
        let mut chars = name.trim().chars();
        let letter = match (chars.next(), chars.next()) {
            (Some(c), None) if c.is_ascii_alphabetic() => c.to_ascii_uppercase(),
            _ => return Err(format!("'{name}' is not a single letter")),
        };
        if out.insert(letter, parse_rational(value)?).is_some() {
            return Err(format!("{letter} is bound twice"));
        }
    }
    Ok(out)
}
