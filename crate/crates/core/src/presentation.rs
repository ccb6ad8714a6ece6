//! Special inverse monoid presentations and their line-oriented file format.
//!
//! The format is ASCII, one declaration per line, with `#` comments and
//! blank lines ignored:
//!
//! ```text
//! gens: ab
//! rel: abaBbAB
//! ```
//!
//! A single `gens:` line must precede one or more `rel:` lines; uppercase
//! letters in a relator denote inverse generators.

use std::fmt;

use thiserror::Error;

use crate::word::{Alphabet, Word};

/// A presentation whose every defining relation reads `w = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialInversePresentation {
    alphabet: Alphabet,
    relators: Vec<Word>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("presentation needs at least one relator")]
    NoRelators,
    #[error("relator {0} is empty")]
    EmptyRelator(usize),
    #[error("relator {index} uses letter {letter:?} outside the alphabet")]
    RelatorOutsideAlphabet { index: usize, letter: char },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: duplicate gens declaration")]
    DuplicateGens { line: usize },
    #[error("line {line}: {message}")]
    BadGens { line: usize, message: String },
    #[error("line {line}: relator before gens declaration")]
    RelatorBeforeGens { line: usize },
    #[error("line {line}: empty relator")]
    EmptyRelator { line: usize },
    #[error("line {line}: bad relator: {message}")]
    BadRelator { line: usize, message: String },
    #[error("line {line}: unrecognized directive {directive:?}")]
    UnknownDirective { line: usize, directive: String },
    #[error("missing gens declaration")]
    MissingGens,
    #[error("no relators declared")]
    NoRelators,
}

impl SpecialInversePresentation {
    pub fn new(alphabet: Alphabet, relators: Vec<Word>) -> Result<Self, PresentationError> {
        if relators.is_empty() {
            return Err(PresentationError::NoRelators);
        }
        for (i, r) in relators.iter().enumerate() {
            if r.is_empty() {
                return Err(PresentationError::EmptyRelator(i));
            }
            if let Err(crate::word::WordError::LetterNotInAlphabet(letter)) = alphabet.check_word(r)
            {
                return Err(PresentationError::RelatorOutsideAlphabet { index: i, letter });
            }
        }
        Ok(SpecialInversePresentation { alphabet, relators })
    }

    /// Convenience constructor from literals, for fixtures and tests.
    pub fn from_literals(gens: &str, relators: &[&str]) -> Self {
        let alphabet = Alphabet::parse(gens).expect("valid alphabet literal");
        let relators = relators
            .iter()
            .map(|s| s.parse().expect("valid relator literal"))
            .collect();
        Self::new(alphabet, relators).expect("valid presentation")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut alphabet: Option<Alphabet> = None;
        let mut relators: Vec<Word> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let content = content.trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix("gens:") {
                if alphabet.is_some() {
                    return Err(ParseError::DuplicateGens { line });
                }
                let letters = rest.trim();
                match Alphabet::parse(letters) {
                    Ok(a) => alphabet = Some(a),
                    Err(e) => {
                        return Err(ParseError::BadGens {
                            line,
                            message: e.to_string(),
                        })
                    }
                }
            } else if let Some(rest) = content.strip_prefix("rel:") {
                let alphabet = alphabet
                    .as_ref()
                    .ok_or(ParseError::RelatorBeforeGens { line })?;
                let literal = rest.trim();
                if literal.is_empty() {
                    return Err(ParseError::EmptyRelator { line });
                }
                let word: Word = literal.parse().map_err(|e: crate::word::WordError| {
                    ParseError::BadRelator {
                        line,
                        message: e.to_string(),
                    }
                })?;
                if let Err(e) = alphabet.check_word(&word) {
                    return Err(ParseError::BadRelator {
                        line,
                        message: e.to_string(),
                    });
                }
                relators.push(word);
            } else {
                let directive = content.split(':').next().unwrap_or(content).to_string();
                return Err(ParseError::UnknownDirective { line, directive });
            }
        }
        let alphabet = alphabet.ok_or(ParseError::MissingGens)?;
        if relators.is_empty() {
            return Err(ParseError::NoRelators);
        }
        Ok(SpecialInversePresentation { alphabet, relators })
    }

    /// The file form of this presentation; `parse(to_text(p)) == p`.
    pub fn to_text(&self) -> String {
        let mut out = format!("gens: {}\n", self.alphabet);
        for r in &self.relators {
            out.push_str(&format!("rel: {r}\n"));
        }
        out
    }
}

impl fmt::Display for SpecialInversePresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨{} | ", self.alphabet)?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r} = 1")?;
        }
        write!(f, "⟩")
    }
}
