use num_complex::Complex64;
use serde::Serialize;

use super::polynomial::horner_complex;
use super::{ExactError, Polynomial, RootMultiset};

pub const DEFAULT_TOLERANCE: f64 = 1e-12;

const MAX_ITERATIONS: usize = 200;
// fractional steps used every 10th iteration to break Laguerre limit cycles
const CYCLE_BREAKERS: [f64; 8] = [0.5, 0.25, 0.75, 0.13, 0.38, 0.62, 0.88, 1.0];

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NumericRoot {
    pub re: f64,
    pub im: f64,
    /// `|p(r)|` on the original polynomial.
    pub residual: f64,
}

impl NumericRoot {
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NumericRoots {
    pub roots: Vec<NumericRoot>,
}

impl NumericRoots {
    pub fn multiset(&self) -> RootMultiset<Complex64> {
        self.roots.iter().map(NumericRoot::value).collect()
    }

    /// Real parts of roots whose imaginary part is exactly zero, ascending.
    pub fn real(&self) -> Vec<f64> {
        self.roots.iter().filter(|r| r.im == 0.0).map(|r| r.re).collect()
    }
}

/// `sum |a_i| |z|^i`, the rounding-error scale of Horner at `z`.
fn magnitude_scale(coeffs: &[f64], z: Complex64) -> f64 {
    let r = z.norm();
    coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.abs())
}

/// `p(z)`, `p'(z)`, `p''(z)` in one Horner pass.
fn eval_with_derivatives(coeffs: &[f64], z: Complex64) -> (Complex64, Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    let (mut p, mut d1, mut d2) = (zero, zero, zero);
    for &c in coeffs.iter().rev() {
        d2 = d2 * z + d1;
        d1 = d1 * z + p;
        p = p * z + c;
    }
    (p, d1, d2 * 2.0)
}

/// Newton refinement on the undeflated polynomial; keeps the best iterate.
fn polish(coeffs: &[f64], z: Complex64) -> Complex64 {
    let mut best = z;
    let mut best_res = horner_complex(coeffs, z).norm();
    let mut cur = z;
    for _ in 0..8 {
        let (p, d1, _) = eval_with_derivatives(coeffs, cur);
        if d1.norm() == 0.0 {
            break;
        }
        cur -= p / d1;
        let res = horner_complex(coeffs, cur).norm();
        if res < best_res {
            best = cur;
            best_res = res;
        } else {
            break;
        }
    }
    best
}

/// All complex roots of `p` via Laguerre iteration with deflation.
///
/// Each root is taken from the deflated polynomial starting at the origin, so
/// roots come out roughly in order of increasing magnitude, then polished on
/// the original coefficients. A root whose imaginary part is below
/// `tolerance * (1 + |re|)` and whose real part alone satisfies the residual
/// contract is reported as real. The contract for every returned root is
/// `|p(r)| <= tolerance * (1 + sum |a_i| |r|^i)`.
pub fn numeric_roots(p: &Polynomial, tolerance: f64) -> Result<NumericRoots, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    if p.degree() == 0 {
        return Err(ExactError::ConstantPolynomial);
    }
    let original = p.to_f64();
    let degree = p.degree();
    let contract = |z: Complex64| {
        horner_complex(&original, z).norm() <= tolerance * (1.0 + magnitude_scale(&original, z))
    };

    let mut work: Vec<Complex64> = original.iter().map(|&c| Complex64::new(c, 0.0)).collect();
    let mut found = Vec::with_capacity(degree);
    while work.len() > 1 {
        let Some(root) = laguerre(&work, Complex64::new(0.0, 0.0)) else {
            return Err(ExactError::NumericFailure { degree, partial: finish(&original, found) });
        };
        let mut root = polish(&original, root);
        if root.im != 0.0 && root.im.abs() <= tolerance * (1.0 + root.re.abs()) {
            let real = polish(&original, Complex64::new(root.re, 0.0));
            if real.im == 0.0 && contract(real) {
                root = real;
            }
        }
        if !contract(root) {
            return Err(ExactError::NumericFailure { degree, partial: finish(&original, found) });
        }
        found.push(root);
        work = deflate(&work, root);
    }
    Ok(NumericRoots { roots: finish(&original, found) })
}

fn laguerre(coeffs: &[Complex64], start: Complex64) -> Option<Complex64> {
    let n = (coeffs.len() - 1) as f64;
    let mut z = start;
    for iter in 1..=MAX_ITERATIONS {
        let zero = Complex64::new(0.0, 0.0);
        let (mut p, mut d1, mut d2) = (zero, zero, zero);
        let mut scale = 0.0;
        for &c in coeffs.iter().rev() {
            d2 = d2 * z + d1;
            d1 = d1 * z + p;
            p = p * z + c;
            scale = scale * z.norm() + c.norm();
        }
        let d2 = d2 * 2.0;
        if p.norm() <= f64::EPSILON * scale {
            return Some(z);
        }
        let g = d1 / p;
        let h = g * g - d2 / p;
        let sq = ((n - 1.0) * (h * n - g * g)).sqrt();
        let (plus, minus) = (g + sq, g - sq);
        let denom = if plus.norm() >= minus.norm() { plus } else { minus };
        let step = if denom.norm() > 0.0 {
            Complex64::new(n, 0.0) / denom
        } else {
            Complex64::from_polar(1.0 + z.norm(), iter as f64)
        };
        let next = z - step;
        if next == z {
            return Some(z);
        }
        z = if iter % 10 == 0 {
            z - step * CYCLE_BREAKERS[(iter / 10) % CYCLE_BREAKERS.len()]
        } else {
            next
        };
    }
    None
}

fn deflate(coeffs: &[Complex64], root: Complex64) -> Vec<Complex64> {
    // synthetic division by (x - root)
    let n = coeffs.len() - 1;
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    let mut carry = Complex64::new(0.0, 0.0);
    for i in (1..=n).rev() {
        carry = carry * root + coeffs[i];
        out[i - 1] = carry;
    }
    out
}

fn finish(original: &[f64], mut roots: Vec<Complex64>) -> Vec<NumericRoot> {
    roots.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    roots
        .into_iter()
        .map(|z| NumericRoot { re: z.re, im: z.im, residual: horner_complex(original, z).norm() })
        .collect()
}
