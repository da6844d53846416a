#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod common;

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::Instant;

use common::{bisect, set_distance, RigidMotion};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use vieta::apollonius::solve_ccc;
use vieta::chord::{count_with_multiplicity, sin_multiple_poly, VanRoomenProblem};
use vieta::cli::{run_pipeline, PipelineRequest};
use vieta::exact::{
    elementary_symmetric_all, numeric_roots, poly_from_roots, vieta_from_coefficients, ExactRational, Polynomial,
    RootMultiset, DEFAULT_TOLERANCE,
};
use vieta::geometry::{
    heptagon_construct, heptagon_point_i, solve_trisection_cubic, trisect_angle, Circle, Point,
};
use vieta::pi::{archimedes_polygon, viete_product, PI_REFERENCE_40};
use vieta::species::{check_homogeneity, from_modern, parse_species, to_modern, SpeciesError};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn pi_reference() -> BigRational {
    let (int, frac) = PI_REFERENCE_40.split_once('.').unwrap();
    let num: BigInt = format!("{int}{frac}").parse().unwrap();
    BigRational::new(num, BigInt::from(10).pow(frac.len() as u32))
}

fn pi_error(hi: f64, lo: f64) -> f64 {
    let v = BigRational::from_float(hi).unwrap() + BigRational::from_float(lo).unwrap();
    (v - pi_reference()).abs().to_f64().unwrap()
}

fn vieta_identities() -> Outcome {
    let mut rng = StdRng::seed_from_u64(1);
    let start = Instant::now();
    for _ in 0..500 {
        let degree = rng.gen_range(1..=8);
        let roots: Vec<i64> = (0..degree).map(|_| rng.gen_range(-10..=10)).collect();
        let ms = RootMultiset::from_integers(&roots);
        let p = poly_from_roots(&ms, &ExactRational::one()).map_err(|e| e.to_string())?;
        let s = vieta_from_coefficients(&p).map_err(|e| e.to_string())?;
        let e = elementary_symmetric_all(&ms);
        ensure!(s.as_slice() == &e[1..], "mismatch for roots {roots:?}");
    }
    let elapsed = start.elapsed();
    ensure!(elapsed.as_secs_f64() < 2.0, "took {elapsed:?}");
    Ok(format!("500 polynomials exact in {:.0} ms", elapsed.as_secs_f64() * 1e3))
}

fn pi_approximations() -> Outcome {
    let polygon = archimedes_polygon(16).map_err(|e| e.to_string())?;
    ensure!(polygon.sides == 393_216, "n = {}", polygon.sides);
    let poly_err = pi_error(polygon.midpoint(), 0.0);
    ensure!(poly_err < 0.5e-10, "polygon midpoint error {poly_err:e}");

    let series = viete_product(18).map_err(|e| e.to_string())?;
    let last = series.last().unwrap();
    let viete_err = pi_error(last.value, last.value_lo);
    ensure!(viete_err < 0.5e-10, "18-term product error {viete_err:e}");

    let long = viete_product(20).map_err(|e| e.to_string())?;
    for k in 5..=14 {
        let ratio = pi_error(long.entries[k].value, long.entries[k].value_lo)
            / pi_error(long.entries[k - 1].value, long.entries[k - 1].value_lo);
        ensure!((0.24..=0.26).contains(&ratio), "ratio {ratio} at k = {k}");
        let reported = long.entries[k].error_ratio.unwrap_or(f64::NAN);
        ensure!((reported - ratio).abs() < 1e-6, "reported ratio {reported} vs {ratio} at k = {k}");
    }
    Ok(format!("polygon error {poly_err:.2e}, product error {viete_err:.2e}, ratios in [0.24, 0.26]"))
}

fn van_roomen() -> Outcome {
    let c = 2f64.sqrt();
    let roots = VanRoomenProblem::new(c).map_err(|e| e.to_string())?.positive_roots();
    ensure!(roots.len() == 23, "{} positive roots", roots.len());
    let poly = sin_multiple_poly(45).map_err(|e| e.to_string())?;
    let chords: Vec<f64> = (0..45).map(|k| 2.0 * (1.0 + 8.0 * k as f64).to_radians().sin()).collect();
    let mut worst_residual = 0.0f64;
    for r in &roots {
        let residual = (poly.evaluate_compensated(r.value) - c).abs();
        worst_residual = worst_residual.max(residual);
        ensure!(residual <= 1e-8, "residual {residual:e} at {}", r.value);
        let nearest = chords.iter().map(|v| (v - r.value).abs()).fold(f64::INFINITY, f64::min);
        ensure!(nearest <= 1e-12, "{} is {nearest:e} from every 2sin(1° + 8k°)", r.value);
    }
    Ok(format!(
        "23 positive roots ({} with multiplicity), worst residual {worst_residual:.1e}",
        count_with_multiplicity(&roots)
    ))
}

fn trisection_cubic() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let b: f64 = rng.gen_range(-2.0..2.0);
        let got = solve_trisection_cubic(b).map_err(|e| format!("b = {b}: {e}"))?.roots;
        let p = Polynomial::new(vec![
            BigRational::from_float(-b).unwrap(),
            BigRational::from_integer((-3).into()),
            BigRational::from_integer(0.into()),
            BigRational::one(),
        ]);
        let mut want: Vec<f64> =
            numeric_roots(&p, DEFAULT_TOLERANCE).map_err(|e| e.to_string())?.roots.iter().map(|r| r.re).collect();
        want.sort_by(f64::total_cmp);
        for (g, w) in got.iter().zip(&want) {
            worst = worst.max((g - w).abs());
        }
        ensure!(worst <= 1e-10, "b = {b}: deviation {worst:e}");
    }
    let plus = solve_trisection_cubic(2.0).map_err(|e| e.to_string())?.roots;
    let minus = solve_trisection_cubic(-2.0).map_err(|e| e.to_string())?.roots;
    ensure!(plus == [-1.0, -1.0, 2.0], "b = 2 gives {plus:?}");
    ensure!(minus == [-2.0, 1.0, 1.0], "b = -2 gives {minus:?}");
    Ok(format!("1000 cubics, worst deviation {worst:.1e}; b = ±2 exact"))
}

fn heptagon() -> Outcome {
    let x = heptagon_point_i(1.0).map_err(|e| e.to_string())?.x;
    let residual = (x * x * x - 7.0 / 3.0 * x - 7.0 / 27.0).abs();
    ensure!(residual <= 1e-10, "cubic residual {residual:e} at x = {x}");
    let oracle = bisect(|t| t * t * t - 7.0 / 3.0 * t - 7.0 / 27.0, 1.5, 1.7);
    ensure!((x - oracle).abs() <= 1e-10, "x = {x}, bisection gives {oracle}");
    let relation = ((x - 4.0 / 3.0) * (x + 2.0 / 3.0).powi(2) - (x - 1.0 / 3.0)).abs();
    ensure!(relation <= 1e-10, "proportion residual {relation:e}");
    let h = heptagon_construct(&Circle::unit()).map_err(|e| e.to_string())?;
    let angle_err = (h.central_angle - 2.0 * PI / 7.0).abs();
    ensure!(angle_err <= 1e-9, "central angle off by {angle_err:e}");
    let y = 2.0 * (2.0 * PI / 7.0).cos();
    let cyc = (y * y * y + y * y - 2.0 * y - 1.0).abs();
    ensure!(cyc <= 1e-12, "y cubic residual {cyc:e}");
    Ok(format!("x = {x:.10}, central angle error {angle_err:.1e}"))
}

fn neusis_trisection() -> Outcome {
    let mut rng = StdRng::seed_from_u64(6);
    let (mut worst_third, mut worst_path) = (0.0f64, 0.0f64);
    for _ in 0..200 {
        let angle: f64 = rng.gen_range(0.01..PI - 0.01);
        let t = trisect_angle(angle).map_err(|e| format!("angle {angle}: {e}"))?;
        worst_third = worst_third.max((t.third - angle / 3.0).abs());
        let analytic_f = Point::new(-2.0 * (angle / 3.0).cos(), 0.0);
        worst_path = worst_path.max((t.third - t.analytic).abs()).max(t.f.dist(analytic_f));
        ensure!(worst_third <= 1e-9, "angle {angle}: third off by {worst_third:e}");
        ensure!(worst_path <= 1e-10, "angle {angle}: analytic path off by {worst_path:e}");
    }
    Ok(format!("200 angles, worst {worst_third:.1e} vs θ/3, {worst_path:.1e} vs analytic"))
}

fn apollonius() -> Outcome {
    let unit = |x: f64, y: f64| Circle::new(Point::new(x, y), 1.0).unwrap();
    let s3 = 3f64.sqrt();
    let soddy = solve_ccc(&unit(0.0, 0.0), &unit(2.0, 0.0), &unit(1.0, s3)).map_err(|e| e.to_string())?;
    let mut radii: Vec<f64> = soddy.iter().map(|s| s.circle.radius).collect();
    radii.sort_by(f64::total_cmp);
    let want = [1.0 / (3.0 + 2.0 * s3), 1.0 / (2.0 * s3 - 3.0)];
    ensure!(radii.len() == 2, "Soddy configuration gave {} circles", radii.len());
    for (r, w) in radii.iter().zip(want) {
        ensure!((r - w).abs() <= 1e-9, "Soddy radius {r} vs {w}");
    }

    let generic = [unit(0.0, 0.0), unit(4.0, 0.0), unit(2.0, 3.0)];
    let sols = solve_ccc(&generic[0], &generic[1], &generic[2]).map_err(|e| e.to_string())?;
    ensure!(sols.len() == 8, "generic triple gave {} circles", sols.len());
    for s in &sols {
        for (i, c) in generic.iter().enumerate() {
            let sigma = f64::from(s.orientation().0[i]);
            let res = (s.circle.center.dist(c.center) - (s.circle.radius + sigma * c.radius).abs()).abs();
            ensure!(res <= 1e-9, "tangency residual {res:e}");
        }
    }

    let mut rng = StdRng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let m = RigidMotion {
            angle: rng.gen_range(0.0..std::f64::consts::TAU),
            reflect: rng.gen(),
            shift: Point::new(rng.gen_range(-50.0..50.0), rng.gen_range(-50.0..50.0)),
        };
        let expected: Vec<Circle> = sols.iter().map(|s| m.circle(&s.circle)).collect();
        let moved = solve_ccc(&m.circle(&generic[0]), &m.circle(&generic[1]), &m.circle(&generic[2]))
            .map_err(|e| e.to_string())?;
        let got: Vec<Circle> = moved.iter().map(|s| s.circle).collect();
        worst = worst.max(set_distance(&expected, &got));
        ensure!(worst <= 1e-9, "rigid motion {m:?} moved solutions by {worst:e}");
    }
    Ok(format!("Soddy radii match, 8 generic solutions, motion deviation {worst:.1e}"))
}

fn parser_corpus() -> Outcome {
    let text = "A cubus + B quad in A æquetur B quad in Z";
    let eq = parse_species(text).map_err(|e| e.to_string())?;
    let dim = check_homogeneity(&eq).map_err(|e| e.to_string())?;
    ensure!(dim == 3, "dimension {dim}");
    let modern = to_modern(&eq).map_err(|e| e.to_string())?;
    ensure!(modern.text == "a³ + b²·a = b²·z", "modern form {}", modern.text);
    let back = from_modern(&modern.text).map_err(|e| e.to_string())?;
    ensure!(back == eq, "from_modern(to_modern(..)) differs");
    ensure!(to_modern(&back).map_err(|e| e.to_string())?.text == modern.text, "second translation differs");

    match parse_species("A quad + B aequatur C").and_then(|e| check_homogeneity(&e)) {
        Err(SpeciesError::Heterogeneous(dims)) => {
            let got: BTreeMap<String, u32> = dims.into_iter().collect();
            ensure!(got.values().any(|&d| d == 2) && got.values().filter(|&&d| d == 1).count() == 2, "dimensions {got:?}");
        }
        other => return Err(format!("heterogeneous example gave {other:?}")),
    }

    let report = run_pipeline(&PipelineRequest::new("A quadratum + A in B aequatur C plano", &[('B', 6), ('C', 16)]))
        .map_err(|e| e.to_string())?;
    let positive = report.positive_roots();
    ensure!(positive == [2.0], "positive roots {positive:?}");
    ensure!(report.exegetic.verified, "pipeline not verified");
    Ok("golden example round-trips, heterogeneous sum rejected, pipeline root 2".into())
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 8] = [
        ("1 root-coefficient identities", vieta_identities),
        ("2 pi approximations", pi_approximations),
        ("3 degree-45 chord equation", van_roomen),
        ("4 trisection cubic", trisection_cubic),
        ("5 heptagon", heptagon),
        ("6 neusis trisection", neusis_trisection),
        ("7 apollonius", apollonius),
        ("8 species parser", parser_corpus),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let outcome = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail}");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
