//! Command-line front end. [`run`] parses arguments, dispatches to one
//! subcommand and returns the process exit status: 0 on success, 1 on a
//! domain error, 2 on a usage error.

pub mod format;
mod pipeline;

pub use pipeline::{
    parse_bindings, parse_rational, run_pipeline, ExegeticKind, ExegeticStage, OutputFormat, PipelineError,
    PipelineReport, PipelineRequest, PipelineRoot, PoristicStage, ZeteticStage,
};

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::apollonius::{apollonius_scene, classify_configuration, solve_ccc, ApolloniusInput, ApolloniusOutput};
use crate::chord::{count_with_multiplicity, VanRoomenProblem};
use crate::exact::{poly_from_roots, verify_vieta, ExactRational, RootMultiset};
use crate::geometry::{
    heptagon_construct, heptagon_cyclotomic_check, solve_cubic_general, trisect_angle, Circle, CubicMethod, CubicProblem, Point,
};
use crate::pi::{archimedes_sequence, convergence_report, reference_pi, viete_product, PI_REFERENCE_40};
use crate::species::{from_modern, parse_species, to_modern};
use format::{csv, exact_num, fmt_complex, fmt_num, precision_from_env, table};

#[derive(Debug, Parser)]
#[command(name = "vieta", version, about = "Root-coefficient identities, species notation, chord polynomials, neusis constructions, nested-radical pi and Apollonius circles")]
pub struct Cli {
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Expand a polynomial from its roots and check the root-coefficient identities exactly.
    Vieta {
        /// Comma-separated rational roots, e.g. 1,-2,3/4.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_rational_list)]
        roots: RationalList,
    },
    /// Parse species text or translate modern notation back.
    Species {
        #[command(subcommand)]
        action: SpeciesCommand,
    },
    /// Nested-radical product and polygon bounds for pi.
    Pi {
        #[command(subcommand)]
        action: PiCommand,
    },
    /// Positive roots of the degree-45 chord equation 2sin(45θ) = c.
    Vanroomen {
        /// Right-hand side: a number, sqrt(N) or √N.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_target)]
        c: Option<f64>,
        /// Base angle in degrees instead of c; c = 2sin(45·φ).
        #[arg(long = "phi-deg", allow_negative_numbers = true)]
        phi_deg: Option<f64>,
        #[arg(long)]
        csv: bool,
    },
    /// All roots of x³ + a2x² + a1x + a0 (or a3x³ + ... with four coefficients).
    Cubic {
        #[arg(long, allow_hyphen_values = true, value_parser = parse_number_list)]
        coeffs: NumberList,
    },
    /// Trisect an angle with a marked ruler.
    Trisect {
        #[arg(long, allow_negative_numbers = true)]
        deg: f64,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Construct the regular heptagon inscribed in a circle.
    Heptagon {
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Circles tangent to three given circles.
    Apollonius {
        /// JSON file: {"circles": [{"cx":..,"cy":..,"r":..}, x3]}.
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Solve a species equation after binding its givens.
    Solve {
        #[arg(long)]
        species: String,
        /// Bindings such as B=6,C=16.
        #[arg(long, default_value = "", allow_hyphen_values = true, value_parser = parse_binding_list)]
        given: Bindings,
        #[arg(long)]
        csv: bool,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum SpeciesCommand {
    /// Species text to modern notation with its dimension.
    Parse { text: String },
    /// Modern notation to species text.
    Modern { text: String },
}

#[derive(Debug, Subcommand)]
pub enum PiCommand {
    /// Partial products of the nested-radical product.
    Viete {
        #[arg(long)]
        terms: usize,
        #[arg(long)]
        csv: bool,
    },
    /// Inscribed and circumscribed polygons from the hexagon, doubling sides.
    Polygon {
        #[arg(long)]
        doublings: u32,
        #[arg(long)]
        csv: bool,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct RationalList(pub Vec<ExactRational>);

#[derive(Clone, Debug, PartialEq)]
pub struct NumberList(pub Vec<f64>);

#[derive(Clone, Debug, PartialEq)]
pub struct Bindings(pub std::collections::BTreeMap<char, ExactRational>);

fn parse_rational_list(s: &str) -> Result<RationalList, String> {
    let v = s.split(',').map(parse_rational).collect::<Result<Vec<_>, _>>()?;
    Ok(RationalList(v))
}

fn parse_number_list(s: &str) -> Result<NumberList, String> {
    s.split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| format!("'{}' is not a number", t.trim())))
        .collect::<Result<Vec<_>, _>>()
        .map(NumberList)
}

fn parse_binding_list(s: &str) -> Result<Bindings, String> {
    parse_bindings(s).map(Bindings)
}

fn parse_target(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let inner = t
        .strip_prefix("sqrt(")
        .and_then(|r| r.strip_suffix(')'))
        .or_else(|| t.strip_prefix("sqrt"))
        .or_else(|| t.strip_prefix('√'));
    match inner {
        Some(r) => r.trim().parse::<f64>().map(f64::sqrt),
        None => t.parse::<f64>(),
    }
    .map_err(|_| format!("'{s}' is not a number or sqrt(N)"))
}

#[derive(Debug)]
enum CliError {
    Domain(String),
    Usage(String),
}

impl<E: std::error::Error> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError::Domain(e.to_string())
    }
}

struct Ctx {
    json: bool,
    digits: usize,
}

impl Ctx {
    fn num(&self, x: f64) -> String {
        fmt_num(x, self.digits)
    }

    fn point(&self, p: Point) -> String {
        format!("({}, {})", self.num(p.x), self.num(p.y))
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("output serializes");
    s.push('\n');
    s
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Domain(format!("cannot write {}: {e}", path.display())))
}

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    let result = precision_from_env()
        .map_err(CliError::Usage)
        .and_then(|digits| dispatch(cli.command, &Ctx { json: cli.json, digits }));
    match result {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(CliError::Domain(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
        Err(CliError::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
    }
}

fn dispatch(command: Command, ctx: &Ctx) -> Result<String, CliError> {
    match command {
        Command::Vieta { roots } => vieta_cmd(&roots.0, ctx),
        Command::Species { action: SpeciesCommand::Parse { text } } => species_parse(&text, ctx),
        Command::Species { action: SpeciesCommand::Modern { text } } => species_modern(&text, ctx),
        Command::Pi { action: PiCommand::Viete { terms, csv } } => pi_viete(terms, csv, ctx),
        Command::Pi { action: PiCommand::Polygon { doublings, csv } } => pi_polygon(doublings, csv, ctx),
        Command::Vanroomen { c, phi_deg, csv } => vanroomen(c, phi_deg, csv, ctx),
        Command::Cubic { coeffs } => cubic(&coeffs.0, ctx),
        Command::Trisect { deg, svg } => trisect(deg, svg.as_deref(), ctx),
        Command::Heptagon { radius, svg } => heptagon(radius, svg.as_deref(), ctx),
        Command::Apollonius { input, svg } => apollonius(&input, svg.as_deref(), ctx),
        Command::Solve { species, given, csv, svg } => solve(species, given.0, csv, svg.as_deref(), ctx),
    }
}

fn vieta_cmd(roots: &[ExactRational], ctx: &Ctx) -> Result<String, CliError> {
    let multiset = RootMultiset::new(roots.to_vec());
    let one = ExactRational::from_integer(1.into());
    let poly = poly_from_roots(&multiset, &one)?;
    let report = verify_vieta(&poly, &multiset, 0.0)?;
    if ctx.json {
        return Ok(to_json(&json!({
            "roots": roots.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "polynomial": poly.to_string(),
            "coefficients": poly.coefficients().iter().map(ToString::to_string).collect::<Vec<_>>(),
            "checks": report.checks,
            "passed": report.passed(),
        })));
    }
    let rows: Vec<Vec<String>> = report
        .checks
        .iter()
        .map(|c| {
            vec![c.j.to_string(), c.from_roots.clone(), c.from_coefficients.clone(), if c.pass { "yes" } else { "no" }.into()]
        })
        .collect();
    Ok(format!(
        "polynomial  {} = 0\n{}identities hold exactly: {}\n",
        poly,
        table(&["j", "s_j from roots", "s_j from coefficients", "equal"], &rows),
        report.passed()
    ))
}

fn species_parse(text: &str, ctx: &Ctx) -> Result<String, CliError> {
    let eq = parse_species(text)?;
    let modern = to_modern(&eq)?;
    let terms: Vec<_> = eq
        .lhs
        .iter()
        .map(|t| ("lhs", t))
        .chain(eq.rhs.iter().map(|t| ("rhs", t)))
        .map(|(side, t)| {
            json!({
                "side": side,
                "sign": t.sign,
                "factors": t.factors.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "dim": t.dimension(),
            })
        })
        .collect();
    if ctx.json {
        return Ok(to_json(&json!({
            "species": eq.to_string(),
            "modern": modern.text,
            "normal_form": modern.normal_form,
            "dimension": modern.dimension,
            "terms": terms,
        })));
    }
    let rows: Vec<Vec<String>> = eq
        .lhs
        .iter()
        .map(|t| ("lhs", t))
        .chain(eq.rhs.iter().map(|t| ("rhs", t)))
        .map(|(side, t)| {
            vec![side.into(), if t.sign > 0 { "+" } else { "-" }.into(), t.body(), t.dimension().to_string()]
        })
        .collect();
    Ok(format!(
        "modern     {}\nnormal     {}\ndimension  {}\n{}",
        modern.text,
        modern.normal_form,
        modern.dimension,
        table(&["side", "sign", "term", "dim"], &rows)
    ))
}

fn species_modern(text: &str, ctx: &Ctx) -> Result<String, CliError> {
    let eq = from_modern(text)?;
    let modern = to_modern(&eq)?;
    if ctx.json {
        return Ok(to_json(&json!({
            "species": eq.to_string(),
            "modern": modern.text,
            "dimension": modern.dimension,
        })));
    }
    Ok(format!("{eq}\n"))
}

fn pi_viete(terms: usize, as_csv: bool, ctx: &Ctx) -> Result<String, CliError> {
    let series = viete_product(terms)?;
    let report = convergence_report(&series).ok();
    if ctx.json {
        return Ok(to_json(&json!({
            "terms": terms,
            "reference": PI_REFERENCE_40,
            "series": series.entries,
            "convergence": report,
        })));
    }
    if as_csv {
        let rows: Vec<Vec<String>> = series
            .entries
            .iter()
            .map(|e| {
                vec![
                    e.k.to_string(),
                    exact_num(e.value),
                    exact_num(e.value_lo),
                    exact_num(e.abs_error),
                    e.error_ratio.map(exact_num).unwrap_or_default(),
                    e.correct_decimals().to_string(),
                ]
            })
            .collect();
        return Ok(csv(&["k", "value", "value_lo", "abs_error", "error_ratio", "correct_decimals"], &rows));
    }
    let rows: Vec<Vec<String>> = series
        .entries
        .iter()
        .map(|e| {
            vec![
                e.k.to_string(),
                ctx.num(e.value),
                fmt_num(e.abs_error, 3),
                e.error_ratio.map(|r| fmt_num(r, 4)).unwrap_or_default(),
                e.correct_decimals().to_string(),
            ]
        })
        .collect();
    let last = series.last().expect("at least one term");
    let mut s = table(&["k", "value", "abs_error", "ratio", "decimals"], &rows);
    s.push_str(&format!("correct decimals after {terms} terms: {}\n", last.correct_decimals()));
    if let Some(r) = report {
        s.push_str(&format!("mean error ratio {} ({:?})\n", fmt_num(r.mean_ratio, 4), r.verdict));
    }
    Ok(s)
}

fn pi_polygon(doublings: u32, as_csv: bool, ctx: &Ctx) -> Result<String, CliError> {
    let seq = archimedes_sequence(doublings)?;
    let last = *seq.last().expect("sequence includes the hexagon");
    let decimals = crate::pi::correct_decimals(last.midpoint_error());
    if ctx.json {
        let rows: Vec<_> = seq
            .iter()
            .map(|b| {
                json!({
                    "doublings": b.doublings,
                    "sides": b.sides,
                    "lower": b.lower,
                    "upper": b.upper,
                    "midpoint": b.midpoint(),
                    "midpoint_error": b.midpoint_error(),
                })
            })
            .collect();
        return Ok(to_json(&json!({
            "doublings": doublings,
            "n": last.sides,
            "lower": last.lower,
            "upper": last.upper,
            "midpoint": last.midpoint(),
            "width": last.width(),
            "midpoint_error": last.midpoint_error(),
            "correct_decimals": decimals,
            "sequence": rows,
        })));
    }
    if as_csv {
        let rows: Vec<Vec<String>> = seq
            .iter()
            .map(|b| {
                vec![
                    b.doublings.to_string(),
                    b.sides.to_string(),
                    exact_num(b.lower),
                    exact_num(b.upper),
                    exact_num(b.midpoint()),
                    exact_num(b.midpoint_error()),
                ]
            })
            .collect();
        return Ok(csv(&["doublings", "sides", "lower", "upper", "midpoint", "midpoint_error"], &rows));
    }
    Ok(format!(
        "n={}\nlower     {}\nupper     {}\nmidpoint  {}\nerror     {}\ncorrect decimals  {}\nreference  {}\n",
        last.sides,
        ctx.num(last.lower),
        ctx.num(last.upper),
        ctx.num(last.midpoint()),
        fmt_num(last.midpoint_error(), 3),
        decimals,
        ctx.num(reference_pi().hi()),
    ))
}

fn vanroomen(c: Option<f64>, phi_deg: Option<f64>, as_csv: bool, ctx: &Ctx) -> Result<String, CliError> {
    let problem = match (c, phi_deg) {
        (Some(c), None) => VanRoomenProblem::new(c)?,
        (None, Some(phi)) => VanRoomenProblem::from_base_angle_deg(phi)?,
        _ => return Err(CliError::Usage("give exactly one of --c and --phi-deg".into())),
    };
    let roots = problem.positive_roots();
    if ctx.json {
        return Ok(to_json(&json!({
            "c": problem.target(),
            "degree": problem.degree(),
            "count": roots.len(),
            "count_with_multiplicity": count_with_multiplicity(&roots),
            "roots": roots,
        })));
    }
    let full = |r: &crate::chord::VanRoomenRoot| {
        vec![
            r.k.to_string(),
            exact_num(r.angle_deg),
            exact_num(r.value),
            r.multiplicity.to_string(),
            exact_num(r.residual),
            exact_num(r.naive_residual),
        ]
    };
    let header = ["k", "angle_deg", "value", "multiplicity", "residual", "naive_residual"];
    if as_csv {
        return Ok(csv(&header, &roots.iter().map(full).collect::<Vec<_>>()));
    }
    let rows: Vec<Vec<String>> = roots
        .iter()
        .map(|r| {
            vec![
                r.k.to_string(),
                ctx.num(r.angle_deg),
                ctx.num(r.value),
                r.multiplicity.to_string(),
                fmt_num(r.residual, 3),
                fmt_num(r.naive_residual, 3),
            ]
        })
        .collect();
    Ok(format!(
        "c = {}\npositive roots: {}\n{}",
        ctx.num(problem.target()),
        roots.len(),
        table(&header, &rows)
    ))
}

fn cubic(coeffs: &[f64], ctx: &Ctx) -> Result<String, CliError> {
    let problem = match *coeffs {
        [a2, a1, a0] => CubicProblem::monic(a2, a1, a0)?,
        [a3, a2, a1, a0] => CubicProblem::new(a3, a2, a1, a0)?,
        _ => return Err(CliError::Usage(format!("--coeffs takes 3 or 4 numbers, got {}", coeffs.len()))),
    };
    let sol = solve_cubic_general(&problem)?;
    if ctx.json {
        let roots: Vec<_> = sol.roots.iter().map(|z| json!({ "re": z.re, "im": z.im })).collect();
        return Ok(to_json(&json!({
            "problem": problem,
            "method": sol.method,
            "roots": roots,
            "relative_residuals": sol.relative_residuals,
            "trace": sol.trace,
        })));
    }
    let rows: Vec<Vec<String>> = sol
        .roots
        .iter()
        .zip(&sol.relative_residuals)
        .map(|(z, r)| vec![fmt_complex(*z, ctx.digits), fmt_num(*r, 3)])
        .collect();
    let method = match sol.method {
        CubicMethod::Trisection => "trisection",
        CubicMethod::Radical => "radical",
        CubicMethod::PureCube => "pure cube",
    };
    let mut s = format!("method  {method}\n{}", table(&["root", "relative_residual"], &rows));
    if let Some(t) = &sol.trace {
        s.push_str(&format!("construction verified: {}\n", t.is_verified()));
    }
    Ok(s)
}

fn trisect(deg: f64, svg: Option<&Path>, ctx: &Ctx) -> Result<String, CliError> {
    let t = trisect_angle(deg.to_radians())?;
    if let Some(path) = svg {
        write_file(path, &t.scene.to_svg())?;
    }
    if ctx.json {
        return Ok(to_json(&json!({
            "angle_deg": deg,
            "third_deg": t.third.to_degrees(),
            "analytic_deg": t.analytic.to_degrees(),
            "trisection": t,
        })));
    }
    Ok(format!(
        "{}\nanalytic  {}\nF  {}\nG  {}\nconstruction verified: {}\n",
        ctx.num(t.third.to_degrees()),
        ctx.num(t.analytic.to_degrees()),
        ctx.point(t.f),
        ctx.point(t.g),
        t.trace.is_verified()
    ))
}

fn heptagon(radius: f64, svg: Option<&Path>, ctx: &Ctx) -> Result<String, CliError> {
    let circle = Circle::new(Point::ORIGIN, radius)?;
    let h = heptagon_construct(&circle)?;
    let check = heptagon_cyclotomic_check()?;
    if let Some(path) = svg {
        write_file(path, &h.scene.to_svg())?;
    }
    if ctx.json {
        return Ok(to_json(&json!({ "heptagon": h, "cyclotomic": check })));
    }
    let mut s = format!(
        "I  {}\n|ID|  {}\nDE²  {}\nside  {}\ncentral angle  {}\nvertex angle  {}\n",
        ctx.point(h.point_i.i),
        ctx.num(h.point_i.x),
        ctx.num(h.point_i.r_squared),
        ctx.num(h.side),
        ctx.num(h.central_angle),
        ctx.num(h.vertex_angle),
    );
    let rows: Vec<Vec<String>> =
        h.vertices.iter().enumerate().map(|(k, p)| vec![k.to_string(), ctx.num(p.x), ctx.num(p.y)]).collect();
    s.push_str(&table(&["vertex", "x", "y"], &rows));
    s.push_str(&format!(
        "2cos(central angle)  {} (cubic residual {})\nconstruction verified: {}\n",
        ctx.num(check.constructed_y),
        fmt_num(check.constructed_residual, 3),
        h.trace.is_verified() && check.passed
    ));
    Ok(s)
}

fn apollonius(input: &Path, svg: Option<&Path>, ctx: &Ctx) -> Result<String, CliError> {
    let text = std::fs::read_to_string(input)
        .map_err(|e| CliError::Domain(format!("cannot read {}: {e}", input.display())))?;
    let spec: ApolloniusInput = serde_json::from_str(&text)
        .map_err(|e| CliError::Domain(format!("{}: {e}", input.display())))?;
    let circles = spec.circles()?;
    let [a, b, c] = circles;
    let solutions = solve_ccc(&a, &b, &c)?;
    let config = classify_configuration(&a, &b, &c);
    if let Some(path) = svg {
        write_file(path, &apollonius_scene(&circles, &solutions).to_svg())?;
    }
    let output = ApolloniusOutput::from(solutions.as_slice());
    if ctx.json {
        return Ok(to_json(&json!({ "configuration": config, "solutions": output.solutions })));
    }
    let relations: Vec<String> =
        config.pairs.iter().map(|p| format!("{}-{} {:?}", p.pair.0, p.pair.1, p.relation)).collect();
    let rows: Vec<Vec<String>> = output
        .solutions
        .iter()
        .map(|s| {
            let orient: Vec<String> = s
                .orientations
                .iter()
                .map(|o| o.iter().map(|&x| if x > 0 { '+' } else { '-' }).collect())
                .collect();
            vec![
                ctx.num(s.cx),
                ctx.num(s.cy),
                ctx.num(s.r),
                orient.join(" "),
                fmt_num(s.residuals.iter().copied().fold(0.0, f64::max), 3),
            ]
        })
        .collect();
    Ok(format!(
        "pairs  {}\nsolutions  {}\n{}",
        relations.join(", "),
        output.solutions.len(),
        table(&["cx", "cy", "r", "orientation", "max_residual"], &rows)
    ))
}

fn solve(
    species: String,
    bindings: std::collections::BTreeMap<char, ExactRational>,
    as_csv: bool,
    svg: Option<&Path>,
    ctx: &Ctx,
) -> Result<String, CliError> {
    let output = match (ctx.json, as_csv) {
        (true, _) => OutputFormat::Json,
        (false, true) => OutputFormat::Csv,
        _ => OutputFormat::Table,
    };
    let req = PipelineRequest { species_text: species, bindings, output };
    let report = run_pipeline(&req)?;
    if let Some(path) = svg {
        write_file(path, &report.render(OutputFormat::Svg, ctx.digits)?)?;
    }
    let mut s = report.render(req.output, ctx.digits)?;
    if !s.ends_with('\n') {
        s.push('\n');
    }
    Ok(s)
}
