//! Words over the two-letter alphabet `{a, b}` and naive occurrence scans.
//!
//! Everything else in the crate is built on these value types. Positions are
//! 1-based throughout: the first letter of a word sits at position 1, and a
//! window `w[i, j]` is inclusive on both ends with `w[i, i-1]` denoting the
//! empty word.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// One letter of the binary alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
}

impl Letter {
    pub fn as_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
        }
    }

    pub fn from_char(c: char) -> Result<Self, Error> {
        match c {
            'a' => Ok(Letter::A),
            'b' => Ok(Letter::B),
            other => Err(Error::InvalidLetter(other)),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A finite word over `{a, b}`, possibly empty.
///
/// Words are immutable values: all operations return fresh words. The empty
/// word renders as `"eps"`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Word(Vec<Letter>);

impl Word {
    pub const fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    /// Letter at 1-based position `pos`.
    pub fn letter(&self, pos: usize) -> Option<Letter> {
        if pos == 0 {
            return None;
        }
        self.0.get(pos - 1).copied()
    }

    /// The window `w[i, j]`, 1-based and inclusive. `j = i - 1` yields the
    /// empty word; anything outside the host is `None`.
    pub fn subword(&self, i: usize, j: usize) -> Option<Word> {
        if i == 0 || j + 1 < i || j > self.len() {
            return None;
        }
        Some(Word(self.0[i - 1..j].to_vec()))
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    pub fn repeat(&self, times: usize) -> Word {
        let mut letters = Vec::with_capacity(self.len() * times);
        for _ in 0..times {
            letters.extend_from_slice(&self.0);
        }
        Word(letters)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn starts_with(&self, other: &Word) -> bool {
        self.0.starts_with(&other.0)
    }

    pub fn ends_with(&self, other: &Word) -> bool {
        self.0.ends_with(&other.0)
    }

    /// True iff the word reads the same in both directions. The empty word
    /// is a palindrome.
    pub fn is_palindrome(&self) -> bool {
        let n = self.0.len();
        (0..n / 2).all(|k| self.0[k] == self.0[n - 1 - k])
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "eps");
        }
        for letter in &self.0 {
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "eps" {
            return Ok(Word::empty());
        }
        if s.is_empty() {
            return Err(Error::MalformedWord(s.to_string()));
        }
        s.chars()
            .map(Letter::from_char)
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
            .map_err(|_| Error::MalformedWord(s.to_string()))
    }
}

impl From<Word> for String {
    fn from(w: Word) -> String {
        w.to_string()
    }
}

impl TryFrom<String> for Word {
    type Error = Error;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// One occurrence of a pattern inside a host: 1-based start plus length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Occurrence {
    pub position: usize,
    pub length: usize,
}

impl Occurrence {
    pub fn new(position: usize, length: usize) -> Self {
        assert!(
            position >= 1 && length >= 1,
            "occurrences are 1-based and nonempty"
        );
        Occurrence { position, length }
    }

    /// 1-based position of the last letter covered.
    pub fn end(&self) -> usize {
        self.position + self.length - 1
    }
}

/// All start positions of `pattern` in `host`, ascending, overlapping
/// occurrences included. Empty patterns are rejected.
pub fn occurrences(pattern: &Word, host: &Word) -> Result<Vec<Occurrence>, Error> {
    if pattern.is_empty() {
        return Err(Error::EmptyPattern);
    }
    Ok(scan(pattern.letters(), host.letters()))
}

pub(crate) fn scan(pattern: &[Letter], host: &[Letter]) -> Vec<Occurrence> {
    let mut out = Vec::new();
    if pattern.is_empty() || pattern.len() > host.len() {
        return out;
    }
    for start in 0..=host.len() - pattern.len() {
        if &host[start..start + pattern.len()] == pattern {
            out.push(Occurrence::new(start + 1, pattern.len()));
        }
    }
    out
}

/// True iff `pattern` occurs somewhere in `host`; the empty word is a factor
/// of everything.
pub fn is_factor(pattern: &Word, host: &Word) -> bool {
    slice_contains(pattern.letters(), host.letters())
}

pub(crate) fn slice_contains(pattern: &[Letter], host: &[Letter]) -> bool {
    if pattern.is_empty() {
        return true;
    }
    if pattern.len() > host.len() {
        return false;
    }
    host.windows(pattern.len()).any(|w| w == pattern)
}
