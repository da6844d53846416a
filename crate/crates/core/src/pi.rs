//! The nested-radical product for π, polygon doubling, and convergence
//! measurement.
//!
//! All sequences run in double-double arithmetic (about 106 significant bits)
//! and errors are measured against a 40-digit reference that is checked
//! against Machin's arctangent formula on first use.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;
use twofloat::TwoFloat;

/// π to 40 significant digits.
pub const PI_REFERENCE_40: &str = "3.141592653589793238462643383279502884197";

pub const MAX_VIETE_TERMS: usize = 40;
pub const MAX_DOUBLINGS: u32 = 24;
/// Errors below this are treated as sitting on the double-precision floor.
pub const FLOATING_FLOOR: f64 = 1e-14;
pub const LINEAR_RATIO_BAND: (f64, f64) = (0.24, 0.26);

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PiError {
    #[error("term count {0} outside 1..={MAX_VIETE_TERMS}")]
    TermsOutOfRange(usize),
    #[error("doubling count {0} outside 0..={MAX_DOUBLINGS}")]
    DoublingsOutOfRange(u32),
    #[error("convergence report needs at least 6 entries, got {0}")]
    SeriesTooShort(usize),
    #[error("no error ratios remain above the floating-point floor")]
    NoUsableRatios,
}

fn decimal_literal(text: &str) -> BigRational {
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    let digits: BigInt = format!("{int}{frac}").parse().expect("decimal literal");
    BigRational::new(digits, BigInt::from(10u32).pow(frac.len() as u32))
}

/// `arctan(1/x)` scaled by `scale`, by the alternating Taylor series in
/// fixed-point integers.
fn arctan_inverse(x: u32, scale: &BigInt) -> BigInt {
    let x = BigInt::from(x);
    let x2 = &x * &x;
    let mut power = scale / &x;
    let mut sum = BigInt::zero();
    let mut n = 1u32;
    let mut positive = true;
    while !power.is_zero() {
        let term = &power / n;
        if positive {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &x2;
        n += 2;
        positive = !positive;
    }
    sum
}

/// π from Machin's formula `π = 16 arctan(1/5) - 4 arctan(1/239)`, with
/// `digits` decimal digits of fixed-point precision.
pub fn machin_pi(digits: u32) -> BigRational {
    let guard = 10;
    let scale = BigInt::from(10u32).pow(digits + guard);
    let value = arctan_inverse(5, &scale) * 16 - arctan_inverse(239, &scale) * 4;
    BigRational::new(value, scale)
}

/// Checks the 40-digit literal against Machin's formula; returns the absolute
/// difference.
pub fn validate_reference_pi() -> f64 {
    let diff = (decimal_literal(PI_REFERENCE_40) - machin_pi(60)).abs();
    diff.to_f64().unwrap_or(f64::INFINITY)
}

/// The reference π as a double-double (hi = nearest double, lo = remainder).
pub fn reference_pi() -> TwoFloat {
    static PI: OnceLock<TwoFloat> = OnceLock::new();
    *PI.get_or_init(|| {
        let diff = validate_reference_pi();
        assert!(diff < 1e-30, "40-digit π literal disagrees with Machin's formula by {diff:e}");
        let exact = decimal_literal(PI_REFERENCE_40);
        let hi = exact.to_f64().expect("finite");
        let lo = (exact - BigRational::from_f64(hi).expect("finite")).to_f64().expect("finite");
        TwoFloat::new_add(hi, lo)
    })
}

fn error_vs_pi(value: TwoFloat) -> f64 {
    f64::from((value - reference_pi()).abs())
}

/// Correct decimal places in the rounding sense: the largest `d` with
/// `|x - π| < 0.5·10^-d`.
pub fn correct_decimals(abs_error: f64) -> u32 {
    if abs_error == 0.0 {
        return 32;
    }
    let d = (-(2.0 * abs_error).log10()).floor();
    if d < 0.0 {
        0
    } else {
        d as u32
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ApproximationEntry {
    pub k: usize,
    pub value: f64,
    /// Low-order part of the double-double value.
    pub value_lo: f64,
    pub abs_error: f64,
    pub error_ratio: Option<f64>,
    /// Polygon side count, for polygon-derived series.
    pub sides: Option<u64>,
}

impl ApproximationEntry {
    pub fn correct_decimals(&self) -> u32 {
        correct_decimals(self.abs_error)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ApproximationSeries {
    pub entries: Vec<ApproximationEntry>,
}

impl ApproximationSeries {
    fn from_values(values: impl IntoIterator<Item = (TwoFloat, Option<u64>)>) -> Self {
        let mut entries: Vec<ApproximationEntry> = Vec::new();
        for (k, (v, sides)) in values.into_iter().enumerate() {
            let abs_error = error_vs_pi(v);
            let error_ratio = entries.last().map(|prev| abs_error / prev.abs_error);
            entries.push(ApproximationEntry {
                k,
                value: v.hi(),
                value_lo: v.lo(),
                abs_error,
                error_ratio,
                sides,
            });
        }
        ApproximationSeries { entries }
    }

    /// Builds a series from plain values; errors are measured against the
    /// reference π.
    pub fn from_f64(values: &[f64]) -> Self {
        Self::from_values(values.iter().map(|&v| (TwoFloat::from(v), None)))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, k: usize) -> Option<&ApproximationEntry> {
        self.entries.get(k)
    }

    pub fn last(&self) -> Option<&ApproximationEntry> {
        self.entries.last()
    }
}

/// Partial products `p_j = 2·∏_{i<=j} 2/t_i`, `t_1 = √2`, `t_{i+1} = √(2 + t_i)`,
/// for `j = 0..=terms`. Entry 0 is the empty product, 2.
pub fn viete_product(terms: usize) -> Result<ApproximationSeries, PiError> {
    if !(1..=MAX_VIETE_TERMS).contains(&terms) {
        return Err(PiError::TermsOutOfRange(terms));
    }
    Ok(ApproximationSeries::from_values(viete_partials(terms).into_iter().map(|v| (v, None))))
}

fn viete_partials(terms: usize) -> Vec<TwoFloat> {
    let two = TwoFloat::from(2.0);
    let mut radical = TwoFloat::from(0.0);
    let mut product = two;
    let mut out = vec![product];
    for _ in 0..terms {
        radical = (two + radical).sqrt();
        product = product * two / radical;
        out.push(product);
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PolygonBounds {
    pub doublings: u32,
    pub sides: u64,
    /// Inscribed semiperimeter over radius.
    pub lower: f64,
    /// Circumscribed semiperimeter over radius.
    pub upper: f64,
    #[serde(skip)]
    lower_dd: TwoFloat,
    #[serde(skip)]
    upper_dd: TwoFloat,
}

impl PolygonBounds {
    pub fn midpoint(&self) -> f64 {
        f64::from((self.lower_dd + self.upper_dd) / 2.0)
    }

    pub fn width(&self) -> f64 {
        f64::from(self.upper_dd - self.lower_dd)
    }

    pub fn midpoint_error(&self) -> f64 {
        error_vs_pi((self.lower_dd + self.upper_dd) / 2.0)
    }

    pub fn lower_error(&self) -> f64 {
        error_vs_pi(self.lower_dd)
    }
}

/// Inscribed polygon side on the unit circle after `doublings` halvings of the
/// central angle, starting from `side`. Uses `s' = s / √(2 + √(4 - s²))`,
/// which has no subtractive cancellation.
fn halve_side(side: TwoFloat) -> TwoFloat {
    let two = TwoFloat::from(2.0);
    let four = TwoFloat::from(4.0);
    side / (two + (four - side * side).sqrt()).sqrt()
}

fn bounds_from(doublings: u32, sides: u64, side: TwoFloat) -> PolygonBounds {
    let n = TwoFloat::from(sides as f64);
    let lower_dd = n * side / 2.0;
    // circumscribed side = 2 tan(θ/2) = 2s / √(4 - s²)
    let upper_dd = n * side / (TwoFloat::from(4.0) - side * side).sqrt();
    PolygonBounds {
        doublings,
        sides,
        lower: lower_dd.hi(),
        upper: upper_dd.hi(),
        lower_dd,
        upper_dd,
    }
}

/// Archimedes' bounds for the `6·2^k`-gon, starting from the inscribed
/// hexagon whose side equals the radius.
pub fn archimedes_polygon(doublings: u32) -> Result<PolygonBounds, PiError> {
    Ok(archimedes_sequence(doublings)?.pop().expect("nonempty"))
}

/// Bounds for every `k` in `0..=doublings`.
pub fn archimedes_sequence(doublings: u32) -> Result<Vec<PolygonBounds>, PiError> {
    if doublings > MAX_DOUBLINGS {
        return Err(PiError::DoublingsOutOfRange(doublings));
    }
    Ok(polygon_run(6, TwoFloat::from(1.0), doublings))
}

fn polygon_run(start_sides: u64, start_side: TwoFloat, doublings: u32) -> Vec<PolygonBounds> {
    let mut side = start_side;
    let mut out = Vec::with_capacity(doublings as usize + 1);
    for k in 0..=doublings {
        if k > 0 {
            side = halve_side(side);
        }
        out.push(bounds_from(k, start_sides << k, side));
    }
    out
}

/// Inscribed semiperimeters starting from the square (side √2), for
/// `k = 0..=doublings`: the `4·2^k`-gon.
pub fn square_polygon_semiperimeters(doublings: u32) -> Vec<f64> {
    polygon_run(4, TwoFloat::from(2.0).sqrt(), doublings)
        .iter()
        .map(|b| f64::from(b.lower_dd))
        .collect()
}

/// Midpoint series of the hexagon-started polygon bounds.
pub fn polygon_series(doublings: u32) -> Result<ApproximationSeries, PiError> {
    let bounds = archimedes_sequence(doublings)?;
    Ok(ApproximationSeries::from_values(
        bounds.iter().map(|b| ((b.lower_dd + b.upper_dd) / 2.0, Some(b.sides))),
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConvergenceVerdict {
    /// Error ratio settles near 1/4.
    Linear,
    NotConverging,
    /// Ratios below 1 but outside the linear band.
    OtherRate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConvergenceReport {
    /// `(k, error_ratio)` for every entry after the first.
    pub ratios: Vec<(usize, Option<f64>)>,
    /// Entries dropped because their error sits on the floating-point floor.
    pub excluded: Vec<usize>,
    pub mean_ratio: f64,
    pub verdict: ConvergenceVerdict,
    pub note: Option<String>,
}

/// Summarizes the error ratios of a series: the mean over the last five
/// ratios above [`FLOATING_FLOOR`], and a verdict of linear convergence when
/// that mean lies in [`LINEAR_RATIO_BAND`].
pub fn convergence_report(series: &ApproximationSeries) -> Result<ConvergenceReport, PiError> {
    if series.len() < 6 {
        return Err(PiError::SeriesTooShort(series.len()));
    }
    let excluded: Vec<usize> = series
        .entries
        .iter()
        .filter(|e| e.abs_error < FLOATING_FLOOR)
        .map(|e| e.k)
        .collect();
    let ratios: Vec<(usize, Option<f64>)> = series.entries[1..]
        .iter()
        .map(|e| (e.k, e.error_ratio))
        .collect();
    let usable: Vec<f64> = series
        .entries
        .windows(2)
        .filter(|w| w[0].abs_error >= FLOATING_FLOOR && w[1].abs_error >= FLOATING_FLOOR)
        .filter_map(|w| w[1].error_ratio)
        .collect();
    if usable.is_empty() {
        return Err(PiError::NoUsableRatios);
    }
    let tail = &usable[usable.len().saturating_sub(5)..];
    let mean_ratio = tail.iter().sum::<f64>() / tail.len() as f64;
    let verdict = if (LINEAR_RATIO_BAND.0..=LINEAR_RATIO_BAND.1).contains(&mean_ratio) {
        ConvergenceVerdict::Linear
    } else if mean_ratio >= 1.0 - 1e-12 {
        ConvergenceVerdict::NotConverging
    } else {
        ConvergenceVerdict::OtherRate
    };
    let note = (!excluded.is_empty()).then(|| {
        format!("{} entries below the {FLOATING_FLOOR:e} floor were excluded", excluded.len())
    });
    Ok(ConvergenceReport { ratios, excluded, mean_ratio, verdict, note })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_literal_matches_machin() {
        assert!(validate_reference_pi() < 1e-39);
        let pi = reference_pi();
        assert_eq!(pi.hi(), std::f64::consts::PI);
        assert!((pi.lo() - 1.2246467991473532e-16).abs() < 1e-31);
    }

    #[test]
    fn viete_first_terms() {
        let s = viete_product(3).unwrap();
        assert_eq!(s.get(0).unwrap().value, 2.0);
        assert!((s.get(1).unwrap().value - 2.0 * 2f64.sqrt()).abs() < 1e-15);
        // oracle: 2^(k+1) sin(π / 2^(k+1)) in double-double
        let p3 = TwoFloat::from(16.0) * (reference_pi() / 16.0).sin();
        assert!((s.get(3).unwrap().value - p3.hi()).abs() < 1e-15);
        assert!((s.get(3).unwrap().value - 3.1214451522580524).abs() < 1e-15);
    }

    #[test]
    fn viete_eighteen_terms_ten_decimals() {
        let s = viete_product(18).unwrap();
        let e = s.last().unwrap();
        assert!(e.abs_error < 5e-11, "{}", e.abs_error);
        assert!(e.correct_decimals() >= 10);
    }

    #[test]
    fn viete_range_checked() {
        assert_eq!(viete_product(0), Err(PiError::TermsOutOfRange(0)));
        assert_eq!(viete_product(41), Err(PiError::TermsOutOfRange(41)));
        assert!(viete_product(40).is_ok());
    }

    #[test]
    fn hexagon_and_dodecagon() {
        let b = archimedes_polygon(0).unwrap();
        assert_eq!(b.sides, 6);
        assert_eq!(b.lower, 3.0);
        assert!((b.upper - 2.0 * 3f64.sqrt()).abs() < 1e-15);
        // 12 sin 15° = 3(√6 - √2)
        let b = archimedes_polygon(1).unwrap();
        assert_eq!(b.sides, 12);
        assert!((b.lower - 3.0 * (6f64.sqrt() - 2f64.sqrt())).abs() < 1e-14);
        assert!((b.lower - 3.10582854123).abs() < 1e-10);
    }

    #[test]
    fn sixteen_doublings() {
        let b = archimedes_polygon(16).unwrap();
        assert_eq!(b.sides, 393_216);
        assert!(b.midpoint_error() < 5e-11);
        assert_eq!(archimedes_polygon(25), Err(PiError::DoublingsOutOfRange(25)));
    }

    #[test]
    fn convergence_of_twelve_terms_is_linear() {
        let r = convergence_report(&viete_product(12).unwrap()).unwrap();
        assert_eq!(r.verdict, ConvergenceVerdict::Linear);
        assert!((0.24..=0.26).contains(&r.mean_ratio));
    }

    #[test]
    fn constant_series_does_not_converge() {
        let r = convergence_report(&ApproximationSeries::from_f64(&[3.0; 8])).unwrap();
        assert_eq!(r.mean_ratio, 1.0);
        assert_eq!(r.verdict, ConvergenceVerdict::NotConverging);
    }

    #[test]
    fn short_series_rejected() {
        let s = ApproximationSeries::from_f64(&[3.0, 3.1, 3.2]);
        assert_eq!(convergence_report(&s), Err(PiError::SeriesTooShort(3)));
    }

    #[test]
    fn floor_entries_excluded() {
        let r = convergence_report(&viete_product(30).unwrap()).unwrap();
        assert!(!r.excluded.is_empty());
        assert!(r.note.is_some());
        assert_eq!(r.verdict, ConvergenceVerdict::Linear);
    }
}
