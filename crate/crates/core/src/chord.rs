//! Multiple-angle chord polynomials.
//!
//! `q_n` expresses `2cos(nθ)` as an integer polynomial in `y = 2cosθ`; for odd
//! `n`, `s_n(x) = (-1)^((n-1)/2) q_n(x)` expresses `2sin(nθ)` in `x = 2sinθ`.
//! Van Roomen's equation is `s_45(x) = c`.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;
use twofloat::TwoFloat;

pub const VAN_ROOMEN_DEGREE: u32 = 45;

/// Roots closer than this are merged and counted with multiplicity.
pub const MERGE_DISTANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ChordError {
    #[error("sine chord polynomials exist only for odd n, got {0}")]
    EvenSineDegree(u32),
    #[error("target {0} lies outside [-2, 2]; fewer than n real roots")]
    TargetOutOfRange(f64),
    #[error("van Roomen target must satisfy 0 < c <= 2, got {0}")]
    NonPositiveTarget(f64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChordKind {
    Cosine,
    Sine,
}

/// Integer polynomial in the chord variable, stored sparsely by power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChordPolynomial {
    n: u32,
    kind: ChordKind,
    coefficients: BTreeMap<u32, BigInt>,
}

impl ChordPolynomial {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn kind(&self) -> ChordKind {
        self.kind
    }

    pub fn degree(&self) -> u32 {
        self.coefficients.keys().next_back().copied().unwrap_or(0)
    }

    pub fn coefficients(&self) -> &BTreeMap<u32, BigInt> {
        &self.coefficients
    }

    pub fn coefficient(&self, power: u32) -> BigInt {
        self.coefficients.get(&power).cloned().unwrap_or_default()
    }

    /// Dense coefficients as doubles, lowest power first. Exact while every
    /// coefficient is below 2^53, which holds well past n = 45.
    pub fn dense_f64(&self) -> Vec<f64> {
        let mut out = vec![0.0; self.degree() as usize + 1];
        for (&p, c) in &self.coefficients {
            out[p as usize] = c.to_f64().unwrap_or(f64::NAN);
        }
        out
    }

    /// Plain Horner evaluation.
    pub fn evaluate(&self, x: f64) -> f64 {
        self.dense_f64().iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    /// Compensated Horner: error-free products and sums carry the rounding
    /// error of each step into a second accumulator. Accurate to about
    /// `eps + eps^2 * cond`.
    pub fn evaluate_compensated(&self, x: f64) -> f64 {
        compensated_horner(&self.dense_f64(), x)
    }

    /// Horner in double-double arithmetic.
    pub fn evaluate_extended(&self, x: f64) -> TwoFloat {
        self.dense_f64()
            .iter()
            .rev()
            .fold(TwoFloat::from(0.0), |acc, &c| acc * x + c)
    }
}

pub(crate) fn compensated_horner(coeffs: &[f64], x: f64) -> f64 {
    let mut iter = coeffs.iter().rev();
    let Some(&lead) = iter.next() else { return 0.0 };
    let mut s = lead;
    let mut err = 0.0;
    for &a in iter {
        let prod = TwoFloat::new_mul(s, x);
        let sum = TwoFloat::new_add(prod.hi(), a);
        s = sum.hi();
        err = err * x + (prod.lo() + sum.lo());
    }
    s + err
}

fn cosine_recurrence(n: u32) -> BTreeMap<u32, BigInt> {
    // q_0 = 2, q_1 = y, q_{k+1} = y q_k - q_{k-1}
    let mut prev: Vec<BigInt> = vec![BigInt::from(2)];
    let mut cur: Vec<BigInt> = vec![BigInt::zero(), BigInt::from(1)];
    if n == 0 {
        cur = prev.clone();
    }
    for _ in 1..n {
        let mut next = vec![BigInt::zero(); cur.len() + 1];
        for (i, c) in cur.iter().enumerate() {
            next[i + 1] += c;
        }
        for (i, c) in prev.iter().enumerate() {
            next[i] -= c;
        }
        prev = std::mem::replace(&mut cur, next);
    }
    cur.into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as u32, c))
        .collect()
}

static Q45: OnceLock<ChordPolynomial> = OnceLock::new();

/// `q_n` with `q_n(2cosθ) = 2cos(nθ)`.
pub fn cos_multiple_poly(n: u32) -> ChordPolynomial {
    let build = || ChordPolynomial { n, kind: ChordKind::Cosine, coefficients: cosine_recurrence(n) };
    if n == VAN_ROOMEN_DEGREE {
        Q45.get_or_init(build).clone()
    } else {
        build()
    }
}

/// `s_n` with `s_n(2sinθ) = 2sin(nθ)`, odd `n` only.
pub fn sin_multiple_poly(n: u32) -> Result<ChordPolynomial, ChordError> {
    if n.is_multiple_of(2) {
        return Err(ChordError::EvenSineDegree(n));
    }
    let mut coefficients = cos_multiple_poly(n).coefficients;
    if (n - 1) / 2 % 2 == 1 {
        coefficients.values_mut().for_each(|c| *c = -c.clone());
    }
    Ok(ChordPolynomial { n, kind: ChordKind::Sine, coefficients })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ChordRoot {
    /// Index of the first angle `φ + 2πk/n` that produced this root.
    pub k: u32,
    /// That angle, radians.
    pub angle: f64,
    pub value: f64,
    pub multiplicity: u32,
}

/// Real solutions of `s_n(x) = c` as `x_k = 2sin(φ + 2πk/n)`, with
/// `φ = asin(c/2)/n`. Values within [`MERGE_DISTANCE`] are merged; the
/// multiplicities always sum to `n`.
pub fn solve_chord_equation(n: u32, c: f64) -> Result<Vec<ChordRoot>, ChordError> {
    if n.is_multiple_of(2) {
        return Err(ChordError::EvenSineDegree(n));
    }
    if !(c.abs() <= 2.0) {
        return Err(ChordError::TargetOutOfRange(c));
    }
    let phi = (c / 2.0).asin() / n as f64;
    let mut roots: Vec<ChordRoot> = Vec::with_capacity(n as usize);
    for k in 0..n {
        let angle = phi + 2.0 * PI * k as f64 / n as f64;
        let value = 2.0 * angle.sin();
        match roots.iter_mut().find(|r| (r.value - value).abs() <= MERGE_DISTANCE) {
            Some(r) => r.multiplicity += 1,
            None => roots.push(ChordRoot { k, angle, value, multiplicity: 1 }),
        }
    }
    Ok(roots)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct VanRoomenRoot {
    pub k: u32,
    pub angle_deg: f64,
    pub value: f64,
    pub multiplicity: u32,
    /// `|2sin(45·angle) - c|`.
    pub trig_residual: f64,
    /// `|s_45(x) - c|` under compensated Horner.
    pub residual: f64,
    /// `|s_45(x) - c|` under plain double Horner, for comparison.
    pub naive_residual: f64,
}

/// Van Roomen's degree-45 chord equation `s_45(x) = c`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VanRoomenProblem {
    target: f64,
}

impl VanRoomenProblem {
    pub fn new(target: f64) -> Result<Self, ChordError> {
        if !(target > 0.0) {
            return Err(ChordError::NonPositiveTarget(target));
        }
        if target > 2.0 {
            return Err(ChordError::TargetOutOfRange(target));
        }
        Ok(VanRoomenProblem { target })
    }

    /// The target for which the base angle is `phi_deg`: `c = 2sin(45 φ)`.
    pub fn from_base_angle_deg(phi_deg: f64) -> Result<Self, ChordError> {
        Self::new(2.0 * (VAN_ROOMEN_DEGREE as f64 * phi_deg).to_radians().sin())
    }

    pub fn target(&self) -> f64 {
        self.target
    }

    pub fn degree(&self) -> u32 {
        VAN_ROOMEN_DEGREE
    }

    pub fn positive_roots(&self) -> Vec<VanRoomenRoot> {
        van_roomen_positive_roots(self.target).expect("target validated on construction")
    }
}

/// Strictly positive solutions of `s_45(x) = c`, ascending, each re-verified
/// against the degree-45 polynomial.
pub fn van_roomen_positive_roots(c: f64) -> Result<Vec<VanRoomenRoot>, ChordError> {
    if !(c > 0.0) {
        return Err(ChordError::NonPositiveTarget(c));
    }
    let poly = sin_multiple_poly(VAN_ROOMEN_DEGREE)?;
    let mut out: Vec<VanRoomenRoot> = solve_chord_equation(VAN_ROOMEN_DEGREE, c)?
        .into_iter()
        .filter(|r| r.value > 0.0)
        .map(|r| VanRoomenRoot {
            k: r.k,
            angle_deg: r.angle.to_degrees(),
            value: r.value,
            multiplicity: r.multiplicity,
            trig_residual: (2.0 * (VAN_ROOMEN_DEGREE as f64 * r.angle).sin() - c).abs(),
            residual: (poly.evaluate_compensated(r.value) - c).abs(),
            naive_residual: (poly.evaluate(r.value) - c).abs(),
        })
        .collect();
    out.sort_by(|a, b| a.value.total_cmp(&b.value));
    Ok(out)
}

/// Root count with multiplicity.
pub fn count_with_multiplicity(roots: &[VanRoomenRoot]) -> u32 {
    roots.iter().map(|r| r.multiplicity).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_i64(p: &ChordPolynomial) -> Vec<i64> {
        let mut v = vec![0; p.degree() as usize + 1];
        for (&k, c) in p.coefficients() {
            v[k as usize] = c.to_i64().unwrap();
        }
        v
    }

    #[test]
    fn small_cosine_polynomials() {
        assert_eq!(dense_i64(&cos_multiple_poly(0)), vec![2]);
        assert_eq!(dense_i64(&cos_multiple_poly(1)), vec![0, 1]);
        assert_eq!(dense_i64(&cos_multiple_poly(2)), vec![-2, 0, 1]);
        assert_eq!(dense_i64(&cos_multiple_poly(3)), vec![0, -3, 0, 1]);
    }

    #[test]
    fn degree_45_coefficients() {
        let q = cos_multiple_poly(45);
        assert_eq!(q.degree(), 45);
        assert_eq!(q.coefficient(45), BigInt::from(1));
        assert_eq!(q.coefficient(43), BigInt::from(-45));
        assert_eq!(q.coefficient(41), BigInt::from(945));
        let theta: f64 = 0.1;
        assert!((q.evaluate_compensated(2.0 * theta.cos()) - 2.0 * (45.0 * theta).cos()).abs() < 1e-10);
    }

    #[test]
    fn sine_polynomials() {
        // 2sin3θ = 3(2sinθ) - (2sinθ)^3
        assert_eq!(dense_i64(&sin_multiple_poly(3).unwrap()), vec![0, 3, 0, -1]);
        assert_eq!(dense_i64(&sin_multiple_poly(1).unwrap()), vec![0, 1]);
        assert_eq!(sin_multiple_poly(45).unwrap().coefficient(45), BigInt::from(1));
        assert_eq!(sin_multiple_poly(4), Err(ChordError::EvenSineDegree(4)));
    }

    #[test]
    fn sine_identity_on_grid() {
        for n in [1u32, 3, 5, 7, 15, 45] {
            let s = sin_multiple_poly(n).unwrap();
            for i in 0..=200 {
                let theta = -PI / 2.0 + PI * i as f64 / 200.0;
                let lhs = s.evaluate_compensated(2.0 * theta.sin());
                assert!((lhs - 2.0 * (n as f64 * theta).sin()).abs() <= 1e-12 * n as f64, "n={n} θ={theta}");
            }
        }
    }

    #[test]
    fn chord_equation_examples() {
        let r = solve_chord_equation(3, 2.0).unwrap();
        let mut flat: Vec<f64> = r.iter().flat_map(|r| std::iter::repeat_n(r.value, r.multiplicity as usize)).collect();
        flat.sort_by(f64::total_cmp);
        assert_eq!(flat.len(), 3);
        assert!((flat[0] + 2.0).abs() < 1e-12);
        assert!((flat[1] - 1.0).abs() < 1e-12 && (flat[2] - 1.0).abs() < 1e-12);
        for x in &flat {
            assert!((3.0 * x - x * x * x - 2.0).abs() < 1e-12);
        }

        let r = solve_chord_equation(1, 0.5).unwrap();
        assert_eq!(r.len(), 1);
        assert!((r[0].value - 0.5).abs() < 1e-15);

        let r = solve_chord_equation(45, 2f64.sqrt()).unwrap();
        assert_eq!(r.len(), 45);
        for (k, root) in r.iter().enumerate() {
            let expected = 2.0 * (1.0 + 8.0 * k as f64).to_radians().sin();
            assert!((root.value - expected).abs() < 1e-12);
        }
        assert_eq!(solve_chord_equation(45, 2.5), Err(ChordError::TargetOutOfRange(2.5)));
        assert_eq!(solve_chord_equation(4, 1.0), Err(ChordError::EvenSineDegree(4)));
    }

    #[test]
    fn van_roomen_sqrt2() {
        let roots = van_roomen_positive_roots(2f64.sqrt()).unwrap();
        assert_eq!(roots.len(), 23);
        assert!((roots[0].value - 0.0349048128745).abs() < 1e-12);
        assert!((roots[22].value - 1.99969539030).abs() < 1e-10);
        assert!(roots.iter().all(|r| r.residual <= 1e-8));
    }

    #[test]
    fn van_roomen_boundary_counts_multiplicity() {
        let roots = van_roomen_positive_roots(2.0).unwrap();
        assert_eq!(count_with_multiplicity(&roots), 23);
        let mut angles: Vec<f64> = (0..23).map(|k| 2.0 * (2.0 + 8.0 * k as f64).to_radians().sin()).collect();
        angles.sort_by(f64::total_cmp);
        angles.dedup_by(|a, b| (*a - *b).abs() < 1e-12);
        assert_eq!(roots.len(), angles.len());
    }

    #[test]
    fn van_roomen_near_zero_target() {
        // the k = 0 root sits at 2sin(φ) with φ ≈ 1.1e-11 and stays positive
        let roots = van_roomen_positive_roots(1e-9).unwrap();
        assert_eq!(roots.len(), 23);
        assert!(roots[0].value < 1e-10);
        let mut expected: Vec<f64> = (1..=22).map(|k| 2.0 * (8.0 * k as f64).to_radians().sin()).collect();
        expected.sort_by(f64::total_cmp);
        for (r, e) in roots[1..].iter().zip(&expected) {
            assert!((r.value - e).abs() < 1e-9);
        }
        assert_eq!(van_roomen_positive_roots(0.0), Err(ChordError::NonPositiveTarget(0.0)));
    }
}
