use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{ExactError, ExactRational};

/// Dense univariate polynomial with exact rational coefficients.
///
/// `coefficients()[i]` is the coefficient of x^i. The last stored coefficient
/// is nonzero unless the polynomial is identically zero, in which case the
/// list is exactly `[0]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<ExactRational>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<ExactRational>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(ExactRational::zero());
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial::new(Vec::new())
    }

    pub fn constant(c: ExactRational) -> Self {
        Polynomial::new(vec![c])
    }

    /// Builds a polynomial from integer coefficients, lowest power first.
    pub fn from_integers(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| ExactRational::from_integer(c.into())).collect())
    }

    pub fn coefficients(&self) -> &[ExactRational] {
        &self.coeffs
    }

    pub fn coefficient(&self, power: usize) -> ExactRational {
        self.coeffs.get(power).cloned().unwrap_or_else(ExactRational::zero)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn leading(&self) -> &ExactRational {
        self.coeffs.last().expect("coefficient list is never empty")
    }

    /// Multiplies every coefficient by `factor`.
    pub fn scale(&self, factor: &ExactRational) -> Self {
        Polynomial::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Product with `(x - root)`.
    pub fn mul_linear(&self, root: &ExactRational) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut out = vec![ExactRational::zero(); self.coeffs.len() + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i + 1] += c;
            out[i] -= c * root;
        }
        Polynomial::new(out)
    }

    pub fn evaluate(&self, x: &ExactRational) -> ExactRational {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRational::zero(), |acc, c| acc * x + c)
    }

    /// Coefficients rounded to the nearest double, lowest power first.
    pub fn to_f64(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    pub fn evaluate_complex(&self, z: Complex64) -> Complex64 {
        horner_complex(&self.to_f64(), z)
    }
}

pub(crate) fn horner_complex(coeffs: &[f64], z: Complex64) -> Complex64 {
    coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
}

impl fmt::Display for Polynomial {
    /// Canonical text form: `a_n x^n + ... + a_0`, highest power first, zero
    /// terms omitted, unit coefficients elided, rationals written `p/q`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let magnitude = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            let unit = magnitude.is_one();
            match power {
                0 => write!(f, "{magnitude}")?,
                _ => {
                    if !unit {
                        write!(f, "{magnitude} ")?;
                    }
                    if power == 1 {
                        f.write_str("x")?;
                    } else {
                        write!(f, "x^{power}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl FromStr for Polynomial {
    type Err = ExactError;

    /// Parses the text form written by `Display`. Whitespace between tokens is
    /// optional and an explicit `*` between coefficient and `x` is accepted.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PolyParser::new(s).parse()
    }
}

struct PolyParser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> PolyParser<'a> {
    fn new(src: &'a str) -> Self {
        PolyParser { src, pos: 0 }
    }

    fn err(&self, message: impl Into<String>) -> ExactError {
        ExactError::PolynomialSyntax { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| &self.src[start..self.pos])
    }

    fn rational(&mut self) -> Result<Option<ExactRational>, ExactError> {
        self.skip_ws();
        let Some(num) = self.digits() else { return Ok(None) };
        let num: num_bigint::BigInt = num.parse().map_err(|_| self.err("bad integer"))?;
        let save = self.pos;
        self.skip_ws();
        if self.peek() == Some('/') {
            self.pos += 1;
            self.skip_ws();
            let den = self.digits().ok_or_else(|| self.err("expected denominator"))?;
            let den: num_bigint::BigInt = den.parse().map_err(|_| self.err("bad integer"))?;
            if den.is_zero() {
                return Err(self.err("zero denominator"));
            }
            Ok(Some(ExactRational::new(num, den)))
        } else {
            self.pos = save;
            Ok(Some(ExactRational::from_integer(num)))
        }
    }

    fn parse(mut self) -> Result<Polynomial, ExactError> {
        let mut coeffs: Vec<ExactRational> = Vec::new();
        let mut first = true;
        loop {
            self.skip_ws();
            if self.pos == self.src.len() {
                if first {
                    return Err(self.err("empty polynomial"));
                }
                break;
            }
            let negative = if self.eat('-') {
                true
            } else if self.eat('+') || first {
                false
            } else {
                return Err(self.err("expected '+' or '-'"));
            };
            first = false;
            let coeff = self.rational()?;
            self.eat('*');
            self.skip_ws();
            let power = if self.peek() == Some('x') {
                self.pos += 1;
                if self.eat('^') {
                    self.skip_ws();
                    let p = self.digits().ok_or_else(|| self.err("expected exponent"))?;
                    p.parse::<usize>().map_err(|_| self.err("exponent too large"))?
                } else {
                    1
                }
            } else if coeff.is_some() {
                0
            } else {
                return Err(self.err("expected coefficient or 'x'"));
            };
            let mut value = coeff.unwrap_or_else(ExactRational::one);
            if negative {
                value = -value;
            }
            if coeffs.len() <= power {
                coeffs.resize(power + 1, ExactRational::zero());
            }
            coeffs[power] += value;
        }
        Ok(Polynomial::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n.into(), d.into())
    }

    #[test]
    fn zero_is_single_coefficient() {
        let p = Polynomial::new(vec![q(0, 1), q(0, 1)]);
        assert!(p.is_zero());
        assert_eq!(p.coefficients().len(), 1);
        assert_eq!(p.degree(), 0);
    }

    #[test]
    fn display_canonical() {
        let p = Polynomial::from_integers(&[-6, 11, -6, 1]);
        assert_eq!(p.to_string(), "x^3 - 6 x^2 + 11 x - 6");
        let p = Polynomial::new(vec![q(5, 1), q(-1, 2), q(0, 1), q(-3, 4)]);
        assert_eq!(p.to_string(), "-3/4 x^3 - 1/2 x + 5");
        assert_eq!(Polynomial::zero().to_string(), "0");
        assert_eq!(Polynomial::from_integers(&[0, -1]).to_string(), "-x");
    }

    #[test]
    fn parse_accepts_loose_forms() {
        let p: Polynomial = "2*x^2 -2x- 12".parse().unwrap();
        assert_eq!(p, Polynomial::from_integers(&[-12, -2, 2]));
        let p: Polynomial = "x^2 + x^2".parse().unwrap();
        assert_eq!(p, Polynomial::from_integers(&[0, 0, 2]));
        assert!("x^2 +".parse::<Polynomial>().is_err());
        assert!("1/0 x".parse::<Polynomial>().is_err());
        assert!("".parse::<Polynomial>().is_err());
    }

    #[test]
    fn canonical_text_round_trips_bit_exactly() {
        for s in ["x^3 - 6 x^2 + 11 x - 6", "-3/4 x^3 - 1/2 x + 5", "0", "7", "x", "-x^45 + 1/3"] {
            let p: Polynomial = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
    }

    #[test]
    fn mul_linear_expands() {
        let p = Polynomial::constant(q(1, 1)).mul_linear(&q(2, 1)).mul_linear(&q(-2, 1));
        assert_eq!(p, Polynomial::from_integers(&[-4, 0, 1]));
    }
}
