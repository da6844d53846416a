//! Species notation: letters for magnitudes (vowels unknown, consonants
//! given), grade words for dimensions, `in` for products and an equality word
//! between the two sides.

mod lexer;
mod modern;
mod parser;

pub use lexer::{detokenize, tokenize, GradeKind, Spanned, Token};
pub use modern::{from_modern, to_modern, ModernForm, NormalTerm};
pub use parser::{
    bind_values, check_homogeneity, parse_equation, parse_species, SpeciesEquation, SpeciesSymbol,
    SpeciesTerm, SymbolKind,
};

use thiserror::Error;

/// Largest dimension any term may carry.
pub const MAX_DIMENSION: u8 = 6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpeciesError {
    #[error("empty input")]
    Empty,
    #[error("unknown word '{word}' at byte {offset}")]
    Lexical { offset: usize, word: String },
    #[error("no equality word (aequatur, aequetur, aequabitur)")]
    MissingEquality,
    #[error("second equality word at byte {0}")]
    ExtraEquality(usize),
    #[error("grade word without preceding letter at byte {0}; write the letter explicitly, e.g. 'B quad in A'")]
    GradeWithoutLetter(usize),
    #[error("two unknowns multiplied in one term at byte {0}")]
    TwoUnknowns(usize),
    #[error("'in' at byte {0} has no following factor")]
    DanglingIn(usize),
    #[error("{word} at byte {offset} applies only to given (consonant) letters")]
    GivenOnUnknown { offset: usize, word: &'static str },
    #[error("term at byte {offset} has dimension {dimension}, above {MAX_DIMENSION}")]
    DimensionTooLarge { offset: usize, dimension: u32 },
    #[error("unexpected {found} at byte {offset}")]
    Unexpected { offset: usize, found: String },
    #[error("empty side of the equation")]
    EmptySide,
    #[error("heterogeneous equation: {}", describe_terms(.0))]
    Heterogeneous(Vec<(String, u32)>),
    #[error("equation has {0} distinct unknowns; only one is supported")]
    MultipleUnknowns(usize),
    #[error("numeric coefficient '{0}' is outside species notation")]
    NumericCoefficient(String),
    #[error("power {0} exceeds {MAX_DIMENSION}")]
    PowerTooLarge(u32),
    #[error("cannot read '{text}' at byte {offset}: {message}")]
    ModernSyntax { offset: usize, text: String, message: &'static str },
    #[error("no value given for {0}")]
    MissingBinding(char),
    #[error("{0} is the unknown and cannot be bound")]
    BoundUnknown(char),
}

fn describe_terms(terms: &[(String, u32)]) -> String {
    terms
        .iter()
        .map(|(t, d)| format!("{t} (dimension {d})"))
        .collect::<Vec<_>>()
        .join(", ")
}
