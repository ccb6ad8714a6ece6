//! Words over a generator alphabet and its formal inverses.
//!
//! A [`Word`] is a finite sequence of [`SignedLetter`]s; the empty word
//! represents the identity. Words are immutable values: every operation
//! returns a fresh word. The text form maps lowercase ASCII to generators
//! and uppercase ASCII to their formal inverses, so `abaBbAB` denotes
//! `a b a b⁻¹ b a⁻¹ b⁻¹` and the empty string denotes the identity.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("invalid letter {ch:?} at position {pos} (expected ASCII a-z or A-Z)")]
    InvalidLiteral { ch: char, pos: usize },
    #[error("alphabet letter {0:?} is not ASCII lowercase")]
    InvalidAlphabetLetter(char),
    #[error("duplicate alphabet letter {0:?}")]
    DuplicateAlphabetLetter(char),
    #[error("alphabet must be nonempty")]
    EmptyAlphabet,
    #[error("letter {0:?} is not in the alphabet")]
    LetterNotInAlphabet(char),
    #[error("no image given for generator {0:?}")]
    MissingImage(char),
}

/// Ordered set of generator names, each a single ASCII lowercase letter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    letters: Vec<u8>,
}

impl Alphabet {
    pub fn new(letters: impl IntoIterator<Item = char>) -> Result<Self, WordError> {
        let mut out = Vec::new();
        for ch in letters {
            if !ch.is_ascii_lowercase() {
                return Err(WordError::InvalidAlphabetLetter(ch));
            }
            let b = ch as u8;
            if out.contains(&b) {
                return Err(WordError::DuplicateAlphabetLetter(ch));
            }
            out.push(b);
        }
        if out.is_empty() {
            return Err(WordError::EmptyAlphabet);
        }
        Ok(Alphabet { letters: out })
    }

    /// Parses an alphabet from its concatenated letters, e.g. `"abcd"`.
    pub fn parse(text: &str) -> Result<Self, WordError> {
        Self::new(text.chars())
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn contains(&self, ch: char) -> bool {
        ch.is_ascii_lowercase() && self.letters.contains(&(ch as u8))
    }

    /// Position of a generator in the alphabet order.
    pub fn index_of(&self, ch: char) -> Option<usize> {
        self.letters.iter().position(|&b| b == ch as u8)
    }

    pub fn letter(&self, index: usize) -> char {
        self.letters[index] as char
    }

    pub fn iter(&self) -> impl Iterator<Item = char> + '_ {
        self.letters.iter().map(|&b| b as char)
    }

    /// Checks that every letter of `w` is drawn from this alphabet.
    pub fn check_word(&self, w: &Word) -> Result<(), WordError> {
        for l in w.iter() {
            if !self.letters.contains(&(l.base() as u8)) {
                return Err(WordError::LetterNotInAlphabet(l.base()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.letters {
            write!(f, "{}", b as char)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

/// A generator or its formal inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedLetter {
    base: u8,
    sign: Sign,
}

impl SignedLetter {
    pub fn positive(ch: char) -> Self {
        debug_assert!(ch.is_ascii_lowercase());
        SignedLetter {
            base: ch as u8,
            sign: Sign::Positive,
        }
    }

    pub fn negative(ch: char) -> Self {
        debug_assert!(ch.is_ascii_lowercase());
        SignedLetter {
            base: ch as u8,
            sign: Sign::Negative,
        }
    }

    /// The underlying generator name (always lowercase).
    pub fn base(&self) -> char {
        self.base as char
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn is_positive(&self) -> bool {
        self.sign == Sign::Positive
    }

    pub fn inverse(&self) -> Self {
        SignedLetter {
            base: self.base,
            sign: match self.sign {
                Sign::Positive => Sign::Negative,
                Sign::Negative => Sign::Positive,
            },
        }
    }

    /// Text form: lowercase for a generator, uppercase for its inverse.
    pub fn literal_char(&self) -> char {
        match self.sign {
            Sign::Positive => self.base as char,
            Sign::Negative => (self.base as char).to_ascii_uppercase(),
        }
    }

    /// Human-readable form used in DOT labels: `a` or `a^-1`.
    pub fn display_label(&self) -> String {
        match self.sign {
            Sign::Positive => format!("{}", self.base as char),
            Sign::Negative => format!("{}^-1", self.base as char),
        }
    }
}

/// A word over signed letters; the empty word is the identity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<SignedLetter>,
}

impl Word {
    pub fn empty() -> Self {
        Word::default()
    }

    pub fn from_letters(letters: Vec<SignedLetter>) -> Self {
        Word { letters }
    }

    pub fn single(l: SignedLetter) -> Self {
        Word { letters: vec![l] }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &SignedLetter> {
        self.letters.iter()
    }

    pub fn letters(&self) -> &[SignedLetter] {
        &self.letters
    }

    /// Graphical concatenation, no reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// The graphical segment `self[start..end]`.
    pub fn segment(&self, start: usize, end: usize) -> Word {
        Word {
            letters: self.letters[start..end].to_vec(),
        }
    }

    /// Left rotation by `k`: `w[k..] · w[..k]`.
    pub fn rotate(&self, k: usize) -> Word {
        if self.letters.is_empty() {
            return Word::empty();
        }
        let k = k % self.letters.len();
        let mut letters = self.letters[k..].to_vec();
        letters.extend_from_slice(&self.letters[..k]);
        Word { letters }
    }

    /// Deletes adjacent inverse pairs until none remain; the unique
    /// reduced word freely equal to this one.
    pub fn free_reduce(&self) -> Word {
        let mut stack: Vec<SignedLetter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match stack.last() {
                Some(&top) if top == l.inverse() => {
                    stack.pop();
                }
                _ => stack.push(l),
            }
        }
        Word { letters: stack }
    }

    /// Graphical inverse: reverse the word and flip every sign.
    pub fn invert(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// Splits the free reduction of this word as `conjugator · core · conjugator⁻¹`
    /// with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (Word, Word) {
        let mut core = self.free_reduce().letters;
        let mut conjugator = Vec::new();
        while core.len() >= 2 {
            let first = core[0];
            let last = *core.last().unwrap();
            if first == last.inverse() {
                conjugator.push(first);
                core.pop();
                core.remove(0);
            } else {
                break;
            }
        }
        (Word { letters: conjugator }, Word { letters: core })
    }

    pub fn is_reduced(&self) -> bool {
        self.letters
            .windows(2)
            .all(|pair| pair[0] != pair[1].inverse())
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        if !self.is_reduced() {
            return false;
        }
        match (self.letters.first(), self.letters.last()) {
            (Some(&first), Some(&last)) if self.letters.len() >= 2 => first != last.inverse(),
            _ => true,
        }
    }

    /// True when the word uses no inverse letters.
    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| l.is_positive())
    }

    /// True when no proper nonempty prefix of the graphical word is also a
    /// suffix. Evaluated on the graphical word regardless of sign content.
    pub fn is_self_overlap_free(&self) -> bool {
        let n = self.letters.len();
        for k in 1..n {
            if self.letters[..k] == self.letters[n - k..] {
                return false;
            }
        }
        true
    }

    pub fn classify(&self) -> WordClass {
        WordClass {
            is_reduced: self.is_reduced(),
            is_cyclically_reduced: self.is_cyclically_reduced(),
            is_positive: self.is_positive(),
            is_self_overlap_free: self.is_self_overlap_free(),
        }
    }

    /// All `|w| + 1` prefixes in increasing length, from the empty word to
    /// the word itself.
    pub fn prefixes(&self) -> Vec<Word> {
        (0..=self.letters.len())
            .map(|k| self.segment(0, k))
            .collect()
    }

    /// Nonempty prefixes shorter than the word itself.
    pub fn proper_nonempty_prefixes(&self) -> Vec<Word> {
        (1..self.letters.len())
            .map(|k| self.segment(0, k))
            .collect()
    }

    /// Rotation index `k` with `self.rotate(k) == other`, if any.
    pub fn cyclic_conjugate_index(&self, other: &Word) -> Option<usize> {
        if self.letters.len() != other.letters.len() {
            return None;
        }
        if self.letters.is_empty() {
            return Some(0);
        }
        (0..self.letters.len()).find(|&k| self.rotate(k) == *other)
    }
}

/// `[u, v] = u v u⁻¹ v⁻¹`, graphically (not reduced).
pub fn commutator(u: &Word, v: &Word) -> Word {
    u.concat(v).concat(&u.invert()).concat(&v.invert())
}

/// Substitutes `images[a]` for each generator `a` (inverse letters receive
/// the inverted image) and freely reduces the result.
pub fn apply_endomorphism(images: &BTreeMap<char, Word>, w: &Word) -> Result<Word, WordError> {
    let mut out = Vec::new();
    for l in w.iter() {
        let image = images
            .get(&l.base())
            .ok_or(WordError::MissingImage(l.base()))?;
        match l.sign() {
            Sign::Positive => out.extend_from_slice(image.letters()),
            Sign::Negative => out.extend(image.letters().iter().rev().map(|x| x.inverse())),
        }
    }
    Ok(Word::from_letters(out).free_reduce())
}

/// Word predicates bundled by [`Word::classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WordClass {
    pub is_reduced: bool,
    pub is_cyclically_reduced: bool,
    pub is_positive: bool,
    pub is_self_overlap_free: bool,
}

// Shortlex: by length first, then by letter order (a < a⁻¹ < b < b⁻¹ < …).
impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.letters
            .len()
            .cmp(&other.letters.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{}", l.literal_char())?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::with_capacity(s.len());
        for (pos, ch) in s.chars().enumerate() {
            if ch.is_ascii_lowercase() {
                letters.push(SignedLetter::positive(ch));
            } else if ch.is_ascii_uppercase() {
                letters.push(SignedLetter::negative(ch.to_ascii_lowercase()));
            } else {
                return Err(WordError::InvalidLiteral { ch, pos });
            }
        }
        Ok(Word { letters })
    }
}

impl serde::Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
