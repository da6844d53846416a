use serde::Serialize;

use super::SpeciesError;

/// Whether a grade word raises a letter to a power or declares the
/// dimension of a given magnitude.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GradeKind {
    /// latus, quadratum, cubus, …
    Power,
    /// planum, solidum
    Given,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "token", rename_all = "lowercase")]
pub enum Token {
    Letter { letter: char },
    Grade { dimension: u8, kind: GradeKind },
    In,
    Plus,
    Minus,
    Equals,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Spanned {
    pub token: Token,
    /// Byte offset of the token in the source text.
    pub offset: usize,
}

const GRADE_WORDS: &[(&str, u8, GradeKind)] = &[
    ("latus", 1, GradeKind::Power),
    ("quadratum", 2, GradeKind::Power),
    ("quad", 2, GradeKind::Power),
    ("cubus", 3, GradeKind::Power),
    ("cub", 3, GradeKind::Power),
    ("quadrato-quadratum", 4, GradeKind::Power),
    ("quad-quad", 4, GradeKind::Power),
    ("quadrato-cubus", 5, GradeKind::Power),
    ("quad-cub", 5, GradeKind::Power),
    ("cubo-cubus", 6, GradeKind::Power),
    ("cub-cub", 6, GradeKind::Power),
    ("planum", 2, GradeKind::Given),
    ("plano", 2, GradeKind::Given),
    ("solidum", 3, GradeKind::Given),
    ("solido", 3, GradeKind::Given),
];

const EQUALITY_WORDS: &[&str] = &["aequatur", "aequetur", "aequabitur"];

fn classify(word: &str) -> Option<Token> {
    let lower = word.to_lowercase().replace('æ', "ae");
    let bare: String = lower.chars().filter(|&c| c != '.').collect();
    let mut chars = bare.chars();
    if let (Some(c), None) = (chars.next(), chars.next()) {
        if c.is_ascii_alphabetic() {
            return Some(Token::Letter { letter: c.to_ascii_uppercase() });
        }
    }
    match bare.as_str() {
        "in" => return Some(Token::In),
        "plus" => return Some(Token::Plus),
        "minus" => return Some(Token::Minus),
        w if EQUALITY_WORDS.contains(&w) => return Some(Token::Equals),
        _ => {}
    }
    GRADE_WORDS
        .iter()
        .find(|(w, _, _)| *w == bare)
        .map(|&(_, dimension, kind)| Token::Grade { dimension, kind })
}

fn is_word_char(c: char) -> bool {
    c.is_alphabetic() || c == '.'
}

/// Splits species text into tokens. Case-insensitive; `æ` reads as `ae`;
/// periods inside and after words are ignored; commas separate nothing.
pub fn tokenize(text: &str) -> Result<Vec<Spanned>, SpeciesError> {
    if text.trim().is_empty() {
        return Err(SpeciesError::Empty);
    }
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (offset, c) = chars[i];
        match c {
            _ if c.is_whitespace() || c == ',' => {
                i += 1;
            }
            '+' => {
                out.push(Spanned { token: Token::Plus, offset });
                i += 1;
            }
            '-' | '−' | '–' => {
                out.push(Spanned { token: Token::Minus, offset });
                i += 1;
            }
            '.' => {
                i += 1;
            }
            _ if c.is_alphabetic() => {
                while i < chars.len() {
                    let ch = chars[i].1;
                    // a hyphen joins compound grade words such as quadrato-cubus
                    let joins = ch == '-' && chars.get(i + 1).is_some_and(|&(_, n)| n.is_alphabetic());
                    if is_word_char(ch) || joins {
                        i += 1;
                    } else {
                        break;
                    }
                }
                let end = chars.get(i).map_or(text.len(), |&(o, _)| o);
                let word = &text[offset..end];
                match classify(word) {
                    Some(token) => out.push(Spanned { token, offset }),
                    None => {
                        // a hyphenated run may be a letter followed by a minus sign
                        let pieces: Vec<&str> = word.split('-').collect();
                        if pieces.len() > 1 && pieces.iter().all(|p| classify(p).is_some()) {
                            let mut off = offset;
                            for (k, p) in pieces.iter().enumerate() {
                                if k > 0 {
                                    out.push(Spanned { token: Token::Minus, offset: off });
                                    off += 1;
                                }
                                out.push(Spanned { token: classify(p).expect("checked"), offset: off });
                                off += p.len();
                            }
                        } else {
                            return Err(SpeciesError::Lexical { offset, word: word.to_string() });
                        }
                    }
                }
            }
            _ => {
                let word = text[offset..].split_whitespace().next().unwrap_or_default();
                return Err(SpeciesError::Lexical { offset, word: word.to_string() });
            }
        }
    }
    Ok(out)
}

pub(crate) fn power_word(dimension: u8) -> &'static str {
    match dimension {
        1 => "latus",
        2 => "quadratum",
        3 => "cubus",
        4 => "quadrato-quadratum",
        5 => "quadrato-cubus",
        _ => "cubo-cubus",
    }
}

pub(crate) fn given_word(dimension: u8) -> &'static str {
    if dimension == 2 {
        "planum"
    } else {
        "solidum"
    }
}

/// Canonical text for a token stream; `tokenize` reads it back to the same
/// tokens.
pub fn detokenize(tokens: &[Token]) -> String {
    tokens
        .iter()
        .map(|t| match *t {
            Token::Letter { letter } => letter.to_string(),
            Token::Grade { dimension, kind: GradeKind::Power } => power_word(dimension).to_string(),
            Token::Grade { dimension, kind: GradeKind::Given } => given_word(dimension).to_string(),
            Token::In => "in".to_string(),
            Token::Plus => "+".to_string(),
            Token::Minus => "minus".to_string(),
            Token::Equals => "aequatur".to_string(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<Token> {
        tokenize(text).unwrap().into_iter().map(|s| s.token).collect()
    }

    #[test]
    fn letter_and_grade() {
        assert_eq!(
            kinds("A cubus"),
            vec![Token::Letter { letter: 'A' }, Token::Grade { dimension: 3, kind: GradeKind::Power }]
        );
        assert_eq!(
            kinds("B plano"),
            vec![Token::Letter { letter: 'B' }, Token::Grade { dimension: 2, kind: GradeKind::Given }]
        );
    }

    #[test]
    fn unknown_word_reports_offset() {
        assert_eq!(
            tokenize("A frobnicatum"),
            Err(SpeciesError::Lexical { offset: 2, word: "frobnicatum".into() })
        );
        assert!(matches!(tokenize("A + 3"), Err(SpeciesError::Lexical { offset: 4, .. })));
        assert_eq!(tokenize("  "), Err(SpeciesError::Empty));
    }

    #[test]
    fn period_ligature_and_case() {
        let t = kinds("A cubus + B quad. in A, æquetur B QUAD. in Z.");
        assert_eq!(t.len(), 12);
        assert_eq!(t[2], Token::Plus);
        assert_eq!(t[7], Token::Equals);
        assert_eq!(t[4], Token::Grade { dimension: 2, kind: GradeKind::Power });
    }

    #[test]
    fn compound_grades_and_minus() {
        assert_eq!(kinds("A quad.-quad.")[1], Token::Grade { dimension: 4, kind: GradeKind::Power });
        assert_eq!(kinds("A quadrato-cubus")[1], Token::Grade { dimension: 5, kind: GradeKind::Power });
        assert_eq!(kinds("A cubo-cubus")[1], Token::Grade { dimension: 6, kind: GradeKind::Power });
        assert_eq!(kinds("A - B"), vec![Token::Letter { letter: 'A' }, Token::Minus, Token::Letter { letter: 'B' }]);
        assert_eq!(kinds("A-B"), vec![Token::Letter { letter: 'A' }, Token::Minus, Token::Letter { letter: 'B' }]);
        assert_eq!(kinds("A − B")[1], Token::Minus);
        assert_eq!(kinds("A minus B")[1], Token::Minus);
    }

    #[test]
    fn offsets_are_bytes() {
        let s = tokenize("æquetur A").unwrap();
        assert_eq!(s[1].offset, "æquetur ".len());
    }

    #[test]
    fn detokenize_round_trip() {
        let t = kinds("A cubus + B quad in A minus C solido aequabitur B quad in Z");
        assert_eq!(kinds(&detokenize(&t)), t);
    }
}
