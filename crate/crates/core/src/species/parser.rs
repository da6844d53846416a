use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Pow, Zero};
use serde::Serialize;

use super::lexer::{given_word, power_word, GradeKind, Spanned, Token};
use super::{tokenize, SpeciesError, MAX_DIMENSION};
use crate::exact::{ExactRational, Polynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SymbolKind {
    Unknown,
    Known,
}

impl SymbolKind {
    pub fn of(letter: char) -> Self {
        if matches!(letter.to_ascii_uppercase(), 'A' | 'E' | 'I' | 'O' | 'U') {
            SymbolKind::Unknown
        } else {
            SymbolKind::Known
        }
    }
}

/// A letter with its dimension. A `Power` grade raises the letter; a `Given`
/// grade says the letter itself is a magnitude of that dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SpeciesSymbol {
    pub letter: char,
    pub kind: SymbolKind,
    pub grade: u8,
    pub grade_kind: GradeKind,
}

impl SpeciesSymbol {
    pub fn power(letter: char, grade: u8) -> Self {
        SpeciesSymbol { letter, kind: SymbolKind::of(letter), grade, grade_kind: GradeKind::Power }
    }

    pub fn given(letter: char, grade: u8) -> Self {
        SpeciesSymbol { letter, kind: SymbolKind::of(letter), grade, grade_kind: GradeKind::Given }
    }

    /// Exponent carried by the letter's value.
    pub fn exponent(&self) -> u32 {
        match self.grade_kind {
            GradeKind::Power => u32::from(self.grade),
            GradeKind::Given => 1,
        }
    }
}

impl fmt::Display for SpeciesSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.grade_kind, self.grade) {
            (GradeKind::Power, 1) => write!(f, "{}", self.letter),
            (GradeKind::Power, g) => write!(f, "{} {}", self.letter, power_word(g)),
            (GradeKind::Given, g) => write!(f, "{} {}", self.letter, given_word(g)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpeciesTerm {
    /// `+1` or `-1`.
    pub sign: i8,
    pub factors: Vec<SpeciesSymbol>,
}

impl SpeciesTerm {
    pub fn dimension(&self) -> u32 {
        self.factors.iter().map(|s| u32::from(s.grade)).sum()
    }

    pub fn unknown(&self) -> Option<&SpeciesSymbol> {
        self.factors.iter().find(|s| s.kind == SymbolKind::Unknown)
    }

    /// The term without its sign, in species words.
    pub fn body(&self) -> String {
        self.factors.iter().map(ToString::to_string).collect::<Vec<_>>().join(" in ")
    }
}

/// Two sides of sign-separated terms. Equality ignores `source`.
#[derive(Clone, Debug, Serialize)]
pub struct SpeciesEquation {
    pub lhs: Vec<SpeciesTerm>,
    pub rhs: Vec<SpeciesTerm>,
    pub source: String,
}

impl PartialEq for SpeciesEquation {
    fn eq(&self, other: &Self) -> bool {
        self.lhs == other.lhs && self.rhs == other.rhs
    }
}

impl SpeciesEquation {
    pub fn terms(&self) -> impl Iterator<Item = &SpeciesTerm> {
        self.lhs.iter().chain(self.rhs.iter())
    }

    /// Distinct unknown letters, in alphabetical order.
    pub fn unknowns(&self) -> BTreeSet<char> {
        self.terms()
            .flat_map(|t| t.factors.iter())
            .filter(|s| s.kind == SymbolKind::Unknown)
            .map(|s| s.letter)
            .collect()
    }

    pub fn knowns(&self) -> BTreeSet<char> {
        self.terms()
            .flat_map(|t| t.factors.iter())
            .filter(|s| s.kind == SymbolKind::Known)
            .map(|s| s.letter)
            .collect()
    }
}

fn side_text(terms: &[SpeciesTerm]) -> String {
    let mut s = String::new();
    for (k, t) in terms.iter().enumerate() {
        match (k, t.sign) {
            (0, 1) => {}
            (0, _) => s.push_str("minus "),
            (_, 1) => s.push_str(" + "),
            _ => s.push_str(" minus "),
        }
        s.push_str(&t.body());
    }
    s
}

impl fmt::Display for SpeciesEquation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} aequatur {}", side_text(&self.lhs), side_text(&self.rhs))
    }
}

struct Parser<'a> {
    tokens: &'a [Spanned],
    pos: usize,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Spanned> {
        self.tokens.get(self.pos)
    }

    fn offset(&self) -> usize {
        self.peek().map_or(self.end, |t| t.offset)
    }

    fn factor(&mut self) -> Result<SpeciesSymbol, SpeciesError> {
        let Some(&Spanned { token, offset }) = self.peek() else {
            return Err(SpeciesError::EmptySide);
        };
        let letter = match token {
            Token::Letter { letter } => letter,
            Token::Grade { .. } => return Err(SpeciesError::GradeWithoutLetter(offset)),
            other => return Err(SpeciesError::Unexpected { offset, found: describe(other) }),
        };
        self.pos += 1;
        let mut symbol = SpeciesSymbol::power(letter, 1);
        if let Some(&Spanned { token: Token::Grade { dimension, kind }, offset }) = self.peek() {
            self.pos += 1;
            if kind == GradeKind::Given && symbol.kind == SymbolKind::Unknown {
                return Err(SpeciesError::GivenOnUnknown { offset, word: given_word(dimension) });
            }
            symbol.grade = dimension;
            symbol.grade_kind = kind;
        }
        Ok(symbol)
    }

    fn term(&mut self, sign: i8) -> Result<SpeciesTerm, SpeciesError> {
        let start = self.offset();
        let mut factors = vec![self.factor()?];
        while let Some(&Spanned { token: Token::In, offset }) = self.peek() {
            self.pos += 1;
            match self.peek() {
                None | Some(Spanned { token: Token::Plus | Token::Minus | Token::Equals, .. }) => {
                    return Err(SpeciesError::DanglingIn(offset));
                }
                _ => {}
            }
            let at = self.offset();
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
        if let Some(Spanned { token: Token::Minus | Token::Plus, .. }) = self.peek() {
            if self.peek().unwrap().token == Token::Minus {
                sign = -1;
            }
            self.pos += 1;
        }
        loop {
            match self.peek() {
                None | Some(Spanned { token: Token::Equals, .. }) if terms.is_empty() => {
                    return Err(SpeciesError::EmptySide)
                }
                _ => {}
            }
            terms.push(self.term(sign)?);
            match self.peek() {
                Some(Spanned { token: Token::Plus, .. }) => sign = 1,
                Some(Spanned { token: Token::Minus, .. }) => sign = -1,
                Some(Spanned { token: Token::Equals, .. }) | None => return Ok(terms),
                Some(&Spanned { token, offset }) => {
                    return Err(SpeciesError::Unexpected { offset, found: describe(token) })
                }
            }
            self.pos += 1;
        }
    }
}

fn describe(token: Token) -> String {
    match token {
        Token::Letter { letter } => format!("letter {letter}"),
        Token::Grade { dimension, kind: GradeKind::Power } => format!("grade word {}", power_word(dimension)),
        Token::Grade { dimension, kind: GradeKind::Given } => format!("grade word {}", given_word(dimension)),
        Token::In => "'in'".into(),
        Token::Plus => "'+'".into(),
        Token::Minus => "'minus'".into(),
        Token::Equals => "equality word".into(),
    }
}

/// Parses a token stream. A grade word binds to the letter before it, then
/// `in` joins factors into a term, then signs join terms into a side.
pub fn parse_equation(tokens: &[Spanned]) -> Result<SpeciesEquation, SpeciesError> {
    parse_tokens(tokens, String::new(), tokens.last().map_or(0, |t| t.offset + 1))
}

fn parse_tokens(tokens: &[Spanned], source: String, end: usize) -> Result<SpeciesEquation, SpeciesError> {
    let equals: Vec<usize> = tokens.iter().filter(|t| t.token == Token::Equals).map(|t| t.offset).collect();
    match equals.as_slice() {
        [] => return Err(SpeciesError::MissingEquality),
        [_] => {}
        [_, second, ..] => return Err(SpeciesError::ExtraEquality(*second)),
    }
    let mut p = Parser { tokens, pos: 0, end };
    let lhs = p.side()?;
    p.pos += 1;
    let rhs = p.side()?;
    if let Some(&Spanned { token, offset }) = p.peek() {
        return Err(SpeciesError::Unexpected { offset, found: describe(token) });
    }
    Ok(SpeciesEquation { lhs, rhs, source })
}

/// Tokenizes and parses species text, keeping the text as the source.
pub fn parse_species(text: &str) -> Result<SpeciesEquation, SpeciesError> {
    let tokens = tokenize(text)?;
    parse_tokens(&tokens, text.to_string(), text.len())
}

/// The common dimension of every term, or the list of terms with their
/// dimensions when they differ.
pub fn check_homogeneity(eq: &SpeciesEquation) -> Result<u32, SpeciesError> {
    let dims: Vec<(String, u32)> = eq.terms().map(|t| (t.body(), t.dimension())).collect();
    let first = dims.first().map(|d| d.1).ok_or(SpeciesError::EmptySide)?;
    if dims.iter().all(|d| d.1 == first) {
        Ok(first)
    } else {
        Err(SpeciesError::Heterogeneous(dims))
    }
}

/// Substitutes values for the given letters, leaving a polynomial in the
/// unknown (`lhs - rhs`).
pub fn bind_values(
    eq: &SpeciesEquation,
    bindings: &BTreeMap<char, ExactRational>,
) -> Result<Polynomial, SpeciesError> {
    let unknowns = eq.unknowns();
    if unknowns.len() > 1 {
        return Err(SpeciesError::MultipleUnknowns(unknowns.len()));
    }
    if let Some(&u) = bindings.keys().find(|k| SymbolKind::of(**k) == SymbolKind::Unknown) {
        return Err(SpeciesError::BoundUnknown(u));
    }
    let mut coeffs: Vec<ExactRational> = Vec::new();
    for (side_sign, side) in [(1, &eq.lhs), (-1, &eq.rhs)] {
        for term in side {
            let mut value = ExactRational::one();
            let mut power = 0usize;
            for s in &term.factors {
                match s.kind {
                    SymbolKind::Unknown => power += s.grade as usize,
                    SymbolKind::Known => {
                        let v = bindings.get(&s.letter).ok_or(SpeciesError::MissingBinding(s.letter))?;
                        value *= Pow::pow(v, s.exponent());
                    }
                }
            }
            if coeffs.len() <= power {
                coeffs.resize(power + 1, ExactRational::zero());
            }
            if side_sign * i32::from(term.sign) > 0 {
                coeffs[power] += value;
            } else {
                coeffs[power] -= value;
            }
        }
    }
    Ok(Polynomial::new(coeffs))
}
