//! Exact polynomial arithmetic and the root-coefficient identities.
//!
//! Coefficients are exact rationals; roots may be exact rationals or complex
//! doubles. The numeric root finder in [`numeric`] is the cross-validation
//! oracle used by the geometric solvers.

mod numeric;
mod polynomial;
mod quadratic;
mod vieta;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};
use thiserror::Error;

pub use numeric::{numeric_roots, NumericRoot, NumericRoots, DEFAULT_TOLERANCE};
pub use polynomial::Polynomial;
pub use quadratic::{solve_quadratic_canonical, QuadraticRoot, RootSign};
pub use vieta::{
    elementary_symmetric, elementary_symmetric_all, poly_from_roots, verify_vieta,
    vieta_from_coefficients, SymmetricValues, VietaCheck, VietaReport, VietaValue,
};

/// Arbitrary-precision rational; always reduced with a positive denominator.
pub type ExactRational = num_rational::BigRational;

pub(crate) fn rational(n: i64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(n))
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExactError {
    #[error("leading coefficient must be nonzero")]
    InvalidLeadingCoefficient,
    #[error("symmetric index {j} out of range 1..={n}")]
    IndexOutOfRange { j: usize, n: usize },
    #[error("the zero polynomial has no root-coefficient data")]
    ZeroPolynomial,
    #[error("polynomial has degree {degree} but {roots} roots were supplied")]
    ArityMismatch { degree: usize, roots: usize },
    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,
    #[error("root iteration did not converge; {} of {degree} roots found", partial.len())]
    NumericFailure { degree: usize, partial: Vec<NumericRoot> },
    #[error("polynomial syntax error at byte {offset}: {message}")]
    PolynomialSyntax { offset: usize, message: String },
}

/// Unordered multiset of roots, multiplicity carried by repetition.
#[derive(Clone, Debug, PartialEq)]
pub struct RootMultiset<T> {
    roots: Vec<T>,
}

impl<T> RootMultiset<T> {
    pub fn new(roots: Vec<T>) -> Self {
        RootMultiset { roots }
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.roots.iter()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.roots
    }
}

impl<T> FromIterator<T> for RootMultiset<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        RootMultiset::new(iter.into_iter().collect())
    }
}

impl RootMultiset<ExactRational> {
    pub fn from_integers(values: &[i64]) -> Self {
        values.iter().map(|&v| rational(v)).collect()
    }
}

impl RootMultiset<Complex64> {
    pub fn from_reals(values: &[f64]) -> Self {
        values.iter().map(|&v| Complex64::new(v, 0.0)).collect()
    }
}

/// Ring operations needed to expand products of roots.
pub trait RootField: Clone + Zero + One + std::ops::Neg<Output = Self> {}

impl RootField for ExactRational {}
impl RootField for Complex64 {}
