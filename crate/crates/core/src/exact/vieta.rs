use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{ExactError, ExactRational, Polynomial, RootField, RootMultiset};

/// `s_1 … s_n`; `s_0 = 1` is implicit.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricValues<T> {
    values: Vec<T>,
}

impl<T> SymmetricValues<T> {
    pub fn as_slice(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `s_j` for `1 <= j <= n`.
    pub fn get(&self, j: usize) -> Option<&T> {
        j.checked_sub(1).and_then(|i| self.values.get(i))
    }
}

/// Expands `leading * prod (x - r_i)`.
pub fn poly_from_roots(
    roots: &RootMultiset<ExactRational>,
    leading: &ExactRational,
) -> Result<Polynomial, ExactError> {
    if leading.is_zero() {
        return Err(ExactError::InvalidLeadingCoefficient);
    }
    Ok(roots
        .iter()
        .fold(Polynomial::constant(leading.clone()), |p, r| p.mul_linear(r)))
}

/// All of `s_0 … s_n` by the one-root-at-a-time recurrence
/// `e_j <- e_j + r * e_{j-1}`.
pub fn elementary_symmetric_all<T: RootField>(roots: &RootMultiset<T>) -> Vec<T>
where
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    let mut e = vec![T::zero(); roots.len() + 1];
    e[0] = T::one();
    for (k, r) in roots.iter().enumerate() {
        for j in (1..=k + 1).rev() {
            let term = r * &e[j - 1];
            e[j] = e[j].clone() + term;
        }
    }
    e
}

/// `s_j`: the sum over all `j`-subsets of the product of their members.
/// `j = 0` yields 1 by convention.
pub fn elementary_symmetric<T: RootField>(roots: &RootMultiset<T>, j: usize) -> Result<T, ExactError>
where
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    if j > roots.len() {
        return Err(ExactError::IndexOutOfRange { j, n: roots.len() });
    }
    Ok(elementary_symmetric_all(roots).swap_remove(j))
}

/// `s_j = (-1)^j a_{n-j} / a_n` for `1 <= j <= n`.
pub fn vieta_from_coefficients(p: &Polynomial) -> Result<SymmetricValues<ExactRational>, ExactError> {
    if p.is_zero() {
        return Err(ExactError::ZeroPolynomial);
    }
    let n = p.degree();
    let lead = p.leading();
    let values = (1..=n)
        .map(|j| {
            let ratio = p.coefficient(n - j) / lead;
            if j % 2 == 1 {
                -ratio
            } else {
                ratio
            }
        })
        .collect();
    Ok(SymmetricValues { values })
}

/// Root values that can be compared against an exact symmetric value.
pub trait VietaValue: RootField
where
    for<'a> &'a Self: std::ops::Mul<&'a Self, Output = Self>,
{
    fn deviation(&self, exact: &ExactRational) -> f64;
    /// Exact comparison when the tolerance is zero, if the type supports it.
    fn matches(&self, exact: &ExactRational, tolerance: f64) -> bool {
        self.deviation(exact) <= tolerance
    }
}

impl VietaValue for ExactRational {
    fn deviation(&self, exact: &ExactRational) -> f64 {
        (self - exact).abs().to_f64().unwrap_or(f64::INFINITY)
    }

    fn matches(&self, exact: &ExactRational, tolerance: f64) -> bool {
        if self == exact {
            return true;
        }
        // a nonzero exact difference can round to 0.0; only tolerance > 0 may absorb it
        tolerance > 0.0 && self.deviation(exact) <= tolerance
    }
}

impl VietaValue for Complex64 {
    fn deviation(&self, exact: &ExactRational) -> f64 {
        let e = exact.to_f64().unwrap_or(f64::NAN);
        (self - Complex64::new(e, 0.0)).norm()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VietaCheck {
    pub j: usize,
    pub from_roots: String,
    pub from_coefficients: String,
    pub deviation: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct VietaReport {
    pub tolerance: f64,
    pub checks: Vec<VietaCheck>,
}

impl VietaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn first_failure(&self) -> Option<usize> {
        self.checks.iter().find(|c| !c.pass).map(|c| c.j)
    }
}

/// Compares `s_j` computed from the roots against the coefficient ratios.
/// With exact roots and `tolerance == 0` the comparison is exact.
pub fn verify_vieta<T>(
    p: &Polynomial,
    roots: &RootMultiset<T>,
    tolerance: f64,
) -> Result<VietaReport, ExactError>
where
    T: VietaValue + std::fmt::Display,
    for<'a> &'a T: std::ops::Mul<&'a T, Output = T>,
{
    let expected = vieta_from_coefficients(p)?;
    if roots.len() != p.degree() {
        return Err(ExactError::ArityMismatch { degree: p.degree(), roots: roots.len() });
    }
    let from_roots = elementary_symmetric_all(roots);
    let checks = expected
        .as_slice()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let j = i + 1;
            let actual = &from_roots[j];
            VietaCheck {
                j,
                from_roots: actual.to_string(),
                from_coefficients: s.to_string(),
                deviation: actual.deviation(s),
                pass: actual.matches(s, tolerance),
            }
        })
        .collect();
    Ok(VietaReport { tolerance, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational;

    /// Brute-force oracle: enumerate every j-subset by bitmask.
    fn subset_sum(roots: &[i64], j: usize) -> i64 {
        (0u32..1 << roots.len())
            .filter(|m| m.count_ones() as usize == j)
            .map(|m| {
                (0..roots.len())
                    .filter(|i| m >> i & 1 == 1)
                    .map(|i| roots[i])
                    .product::<i64>()
            })
            .sum()
    }

    #[test]
    fn poly_from_roots_examples() {
        let p = poly_from_roots(&RootMultiset::from_integers(&[1, 2, 3]), &rational(1)).unwrap();
        assert_eq!(p, Polynomial::from_integers(&[-6, 11, -6, 1]));
        let p = poly_from_roots(&RootMultiset::new(vec![]), &rational(5)).unwrap();
        assert_eq!(p, Polynomial::from_integers(&[5]));
        let p = poly_from_roots(&RootMultiset::from_integers(&[2, -2]), &rational(1)).unwrap();
        assert_eq!(p, Polynomial::from_integers(&[-4, 0, 1]));
        assert_eq!(
            poly_from_roots(&RootMultiset::from_integers(&[1]), &rational(0)),
            Err(ExactError::InvalidLeadingCoefficient)
        );
    }

    #[test]
    fn elementary_symmetric_examples() {
        let roots = RootMultiset::from_integers(&[1, 2, 3]);
        assert_eq!(subset_sum(&[1, 2, 3], 2), 11);
        assert_eq!(elementary_symmetric(&roots, 2).unwrap(), rational(11));
        assert_eq!(elementary_symmetric(&roots, 3).unwrap(), rational(subset_sum(&[1, 2, 3], 3)));
        assert_eq!(elementary_symmetric(&roots, 0).unwrap(), rational(1));
        let single = RootMultiset::new(vec![ExactRational::new(7.into(), 3.into())]);
        assert_eq!(elementary_symmetric(&single, 1).unwrap(), ExactRational::new(7.into(), 3.into()));
        assert_eq!(
            elementary_symmetric(&roots, 4),
            Err(ExactError::IndexOutOfRange { j: 4, n: 3 })
        );
    }

    #[test]
    fn vieta_from_coefficients_examples() {
        let s = vieta_from_coefficients(&Polynomial::from_integers(&[-6, 11, -6, 1])).unwrap();
        assert_eq!(s.as_slice(), &[rational(6), rational(11), rational(6)]);
        let s = vieta_from_coefficients(&Polynomial::from_integers(&[-4, 0, 1])).unwrap();
        assert_eq!(s.as_slice(), &[rational(0), rational(-4)]);
        // roots {3, -2}
        let s = vieta_from_coefficients(&Polynomial::from_integers(&[-12, -2, 2])).unwrap();
        assert_eq!(s.as_slice(), &[rational(1), rational(-6)]);
        assert_eq!(vieta_from_coefficients(&Polynomial::zero()), Err(ExactError::ZeroPolynomial));
    }

    #[test]
    fn verify_vieta_examples() {
        let p = Polynomial::from_integers(&[-6, 11, -6, 1]);
        let r = verify_vieta(&p, &RootMultiset::from_integers(&[1, 2, 3]), 0.0).unwrap();
        assert!(r.passed());

        let p = Polynomial::from_integers(&[-4, 0, 1]);
        let r = verify_vieta(&p, &RootMultiset::from_integers(&[2, 2]), 0.0).unwrap();
        assert_eq!(r.first_failure(), Some(1));
        assert_eq!(r.checks[0].deviation, 4.0);

        let p = Polynomial::from_integers(&[1, 0, 1]);
        let roots = RootMultiset::new(vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)]);
        assert!(verify_vieta(&p, &roots, 0.0).unwrap().passed());

        assert!(matches!(
            verify_vieta(&p, &RootMultiset::from_integers(&[1]), 0.0),
            Err(ExactError::ArityMismatch { degree: 2, roots: 1 })
        ));
    }

    #[test]
    fn symmetric_matches_subset_enumeration() {
        let roots = [3, -1, 4, -1, 5, -9, 2];
        let set = RootMultiset::from_integers(&roots);
        let all = elementary_symmetric_all(&set);
        for (j, s) in all.iter().enumerate() {
            assert_eq!(*s, rational(subset_sum(&roots, j)), "j = {j}");
        }
    }
}
