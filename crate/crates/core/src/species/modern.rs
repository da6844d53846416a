use std::collections::BTreeMap;

use serde::Serialize;

use super::lexer::GradeKind;
use super::parser::{check_homogeneity, SpeciesEquation, SpeciesSymbol, SpeciesTerm, SymbolKind};
use super::{SpeciesError, MAX_DIMENSION};

const SUPERSCRIPTS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];

/// Coefficient of one power of the unknown in `P(x) = 0`; each entry of
/// `parts` is a signed product of known letters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NormalTerm {
    pub power: u32,
    pub parts: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModernForm {
    pub text: String,
    pub normal_form: String,
    pub unknown: Option<char>,
    pub dimension: u32,
    pub normal: Vec<NormalTerm>,
}

fn superscript(n: u32) -> String {
    n.to_string().chars().map(|d| SUPERSCRIPTS[d.to_digit(10).unwrap() as usize]).collect()
}

fn symbol_text(s: &SpeciesSymbol) -> String {
    let l = s.letter.to_ascii_lowercase();
    match (s.grade_kind, s.grade) {
        (GradeKind::Power, 1) => l.to_string(),
        (GradeKind::Power, g) => format!("{l}{}", superscript(u32::from(g))),
        (GradeKind::Given, g) => format!("{l}_{g}"),
    }
}

fn product(factors: &[&SpeciesSymbol]) -> String {
    factors.iter().map(|s| symbol_text(s)).collect::<Vec<_>>().join("·")
}

fn side_text(terms: &[SpeciesTerm]) -> String {
    let mut out = String::new();
    for (k, t) in terms.iter().enumerate() {
        match (k, t.sign) {
            (0, 1) => {}
            (0, _) => out.push('-'),
            (_, 1) => out.push_str(" + "),
            _ => out.push_str(" - "),
        }
        out.push_str(&product(&t.factors.iter().collect::<Vec<_>>()));
    }
    out
}

/// Modern rendering of a homogeneous single-unknown equation, with the
/// collected normal form `P(x) = 0`.
pub fn to_modern(eq: &SpeciesEquation) -> Result<ModernForm, SpeciesError> {
    let unknowns = eq.unknowns();
    if unknowns.len() > 1 {
        return Err(SpeciesError::MultipleUnknowns(unknowns.len()));
    }
    let dimension = check_homogeneity(eq)?;
    let unknown = unknowns.into_iter().next();

    let mut by_power: BTreeMap<u32, Vec<String>> = BTreeMap::new();
    for (side_sign, side) in [(1, &eq.lhs), (-1, &eq.rhs)] {
        for t in side {
            let power = t.unknown().map_or(0, |u| u32::from(u.grade));
            let knowns: Vec<&SpeciesSymbol> = t.factors.iter().filter(|s| s.kind == SymbolKind::Known).collect();
            let body = if knowns.is_empty() { "1".to_string() } else { product(&knowns) };
            let sign = if side_sign * i32::from(t.sign) > 0 { "" } else { "-" };
            by_power.entry(power).or_default().push(format!("{sign}{body}"));
        }
    }
    let normal: Vec<NormalTerm> =
        by_power.into_iter().rev().map(|(power, parts)| NormalTerm { power, parts }).collect();

    let x = unknown.map_or('x', |u| u.to_ascii_lowercase());
    let mut normal_form = String::new();
    for (k, term) in normal.iter().enumerate() {
        let (neg, coeff) = match term.parts.as_slice() {
            [one] => match one.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, one.clone()),
            },
            many => {
                let mut inner = String::new();
                for (j, p) in many.iter().enumerate() {
                    match (j, p.strip_prefix('-')) {
                        (0, _) => inner.push_str(p),
                        (_, Some(rest)) => {
                            inner.push_str(" - ");
                            inner.push_str(rest);
                        }
                        (_, None) => {
                            inner.push_str(" + ");
                            inner.push_str(p);
                        }
                    }
                }
                (false, format!("({inner})"))
            }
        };
        let var = match term.power {
            0 => String::new(),
            1 => x.to_string(),
            p => format!("{x}{}", superscript(p)),
        };
        let body = match (coeff.as_str(), var.is_empty()) {
            ("1", false) => var,
            (_, true) => coeff,
            (c, false) => format!("{c}·{var}"),
        };
        match (k, neg) {
            (0, false) => {}
            (0, true) => normal_form.push('-'),
            (_, false) => normal_form.push_str(" + "),
            (_, true) => normal_form.push_str(" - "),
        }
        normal_form.push_str(&body);
    }
    normal_form.push_str(" = 0");

    Ok(ModernForm {
        text: format!("{} = {}", side_text(&eq.lhs), side_text(&eq.rhs)),
        normal_form,
        unknown,
        dimension,
        normal,
    })
}

struct ModernReader<'a> {
    text: &'a str,
    chars: Vec<(usize, char)>,
    i: usize,
}

impl ModernReader<'_> {
    fn skip_space(&mut self) {
        while self.chars.get(self.i).is_some_and(|c| c.1.is_whitespace()) {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<(usize, char)> {
        self.skip_space();
        self.chars.get(self.i).copied()
    }

    fn offset(&self) -> usize {
        self.chars.get(self.i).map_or(self.text.len(), |c| c.0)
    }

    fn error(&self, message: &'static str) -> SpeciesError {
        let offset = self.offset();
        let text = self.text[offset..].split_whitespace().next().unwrap_or("").to_string();
        SpeciesError::ModernSyntax { offset, text, message }
    }

    fn digits(&mut self, superscript: bool) -> Option<u32> {
        let mut s = String::new();
        while let Some(&(_, c)) = self.chars.get(self.i) {
            let d = if superscript {
                SUPERSCRIPTS.iter().position(|&p| p == c).map(|p| p as u32)
            } else {
                c.to_digit(10)
            };
            match d {
                Some(d) => {
                    s.push(char::from_digit(d, 10).unwrap());
                    self.i += 1;
                }
                None => break,
            }
        }
        s.parse().ok()
    }

    fn factor(&mut self) -> Result<SpeciesSymbol, SpeciesError> {
        let Some((_, c)) = self.peek() else {
            return Err(self.error("expected a letter"));
        };
        if c.is_ascii_digit() {
            let start = self.offset();
            while self.chars.get(self.i).is_some_and(|c| c.1.is_ascii_digit() || c.1 == '.') {
                self.i += 1;
            }
            return Err(SpeciesError::NumericCoefficient(self.text[start..self.offset()].to_string()));
        }
        if !c.is_ascii_alphabetic() {
            return Err(self.error("expected a letter"));
        }
        self.i += 1;
        let letter = c.to_ascii_uppercase();
        let power = match self.chars.get(self.i).map(|c| c.1) {
            Some('^') => {
                self.i += 1;
                Some(self.digits(false).ok_or_else(|| self.error("expected a power after '^'"))?)
            }
            Some(c) if SUPERSCRIPTS.contains(&c) => self.digits(true),
            _ => None,
        };
        let given = if self.chars.get(self.i).map(|c| c.1) == Some('_') {
            self.i += 1;
            Some(self.digits(false).ok_or_else(|| self.error("expected a dimension after '_'"))?)
        } else {
            None
        };
        match (power, given) {
            (Some(_), Some(_)) => Err(self.error("a letter takes a power or a dimension, not both")),
            (None, Some(g)) => {
                if SymbolKind::of(letter) == SymbolKind::Unknown {
                    return Err(self.error("dimension annotation on an unknown"));
                }
                if !(2..=3).contains(&g) {
                    return Err(self.error("dimension annotation must be 2 or 3"));
                }
                Ok(SpeciesSymbol::given(letter, g as u8))
            }
            (Some(p), None) => {
                if p == 0 {
                    return Err(self.error("power must be at least 1"));
                }
                if p > u32::from(MAX_DIMENSION) {
                    return Err(SpeciesError::PowerTooLarge(p));
                }
                Ok(SpeciesSymbol::power(letter, p as u8))
            }
            (None, None) => Ok(SpeciesSymbol::power(letter, 1)),
        }
    }

    fn term(&mut self, sign: i8) -> Result<SpeciesTerm, SpeciesError> {
        let start = self.offset();
        let mut factors = vec![self.factor()?];
        loop {
            match self.peek() {
                Some((_, '·' | '*' | '⋅')) => self.i += 1,
                Some((_, c)) if c.is_ascii_alphanumeric() => {}
                _ => break,
            }
            let at = self.peek().map_or(self.text.len(), |c| c.0);
            let f = self.factor()?;
            if f.kind == SymbolKind::Unknown && factors.iter().any(|s| s.kind == SymbolKind::Unknown) {
                return Err(SpeciesError::TwoUnknowns(at));
            }
            factors.push(f);
        }
        let term = SpeciesTerm { sign, factors };
        if term.dimension() > u32::from(MAX_DIMENSION) {
            return Err(SpeciesError::DimensionTooLarge { offset: start, dimension: term.dimension() });
        }
        Ok(term)
    }

    fn side(&mut self) -> Result<Vec<SpeciesTerm>, SpeciesError> {
        let mut terms = Vec::new();
        let mut sign = 1;
        match self.peek() {
            Some((_, '-' | '−')) => {
                sign = -1;
                self.i += 1;
            }
            Some((_, '+')) => self.i += 1,
            None | Some((_, '=')) => return Err(SpeciesError::EmptySide),
            _ => {}
        }
        loop {
            terms.push(self.term(sign)?);
            match self.peek() {
                Some((_, '+')) => sign = 1,
                Some((_, '-' | '−')) => sign = -1,
                Some((_, '=')) | None => return Ok(terms),
                Some(_) => return Err(self.error("expected '+', '-' or '='")),
            }
            self.i += 1;
        }
    }
}

/// Reads modern notation such as `a³ + b²·a = b²·z` (or `a^3 + b^2*a = b^2 z`)
/// back into a species equation. Givens of higher dimension are written
/// `c_2`, `c_3`.
pub fn from_modern(text: &str) -> Result<SpeciesEquation, SpeciesError> {
    if text.trim().is_empty() {
        return Err(SpeciesError::Empty);
    }
    let mut r = ModernReader { text, chars: text.char_indices().collect(), i: 0 };
    let lhs = r.side()?;
    if r.peek().is_none() {
        return Err(SpeciesError::MissingEquality);
    }
    r.i += 1;
    let rhs = r.side()?;
    if r.peek().is_some() {
        return Err(SpeciesError::ExtraEquality(r.offset()));
    }
    let eq = SpeciesEquation { lhs, rhs, source: text.to_string() };
    check_homogeneity(&eq)?;
    Ok(eq)
}
