//! The doubling substitution `a -> ab`, `b -> aa`, its blocks, and prefixes
//! of the fixed point.
//!
//! The period-doubling sequence is the unique fixed point starting with `a`:
//!
//! ```text
//! abaaabab abaaabaa abaaabab abaaabab ...
//! ```
//!
//! `A_m` and `B_m` denote the images of the seed letters after `m` rounds of
//! substitution; both have length `2^m`. The sequence itself is the limit of
//! the `A_m` blocks. Prefixes are generated by repeated substitution from the
//! seed and memoized, so repeated queries share one growing buffer.

use std::sync::RwLock;

use crate::error::Error;
use crate::words::{Letter, Word};

/// Largest block exponent the crate will materialize (`2^30` letters).
pub const MAX_BLOCK_EXPONENT: u32 = 30;

/// Longest prefix of the fixed point the crate will materialize.
pub const MAX_PREFIX_LEN: usize = 1 << MAX_BLOCK_EXPONENT;

/// Which seed letter a block grows from: `A_m = image^m(a)`, `B_m = image^m(b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockKind {
    A,
    B,
}

fn image(letter: Letter) -> [Letter; 2] {
    match letter {
        Letter::A => [Letter::A, Letter::B],
        Letter::B => [Letter::A, Letter::A],
    }
}

/// Letter-wise image of a word under the substitution; doubles the length.
pub fn substitute(w: &Word) -> Word {
    let mut out = Vec::with_capacity(w.len() * 2);
    for &letter in w.letters() {
        out.extend_from_slice(&image(letter));
    }
    Word::from_letters(out)
}

fn substitute_in_place(buf: &mut Vec<Letter>) {
    let old = std::mem::take(buf);
    *buf = Vec::with_capacity(old.len() * 2);
    for letter in old {
        buf.extend_from_slice(&image(letter));
    }
}

// Always holds A_k for the largest k reached so far; fills are idempotent, so
// the cache behaves as a pure function of the requested length.
static PREFIX_CACHE: RwLock<Vec<Letter>> = RwLock::new(Vec::new());

/// Runs `f` on the first `n` letters of the fixed point.
pub(crate) fn with_prefix<R>(n: usize, f: impl FnOnce(&[Letter]) -> R) -> Result<R, Error> {
    if n > MAX_PREFIX_LEN {
        return Err(Error::BudgetExceeded {
            what: "prefix length",
            requested: n,
            limit: MAX_PREFIX_LEN,
        });
    }
    {
        let cache = PREFIX_CACHE.read().unwrap_or_else(|e| e.into_inner());
        if cache.len() >= n {
            return Ok(f(&cache[..n]));
        }
    }
    {
        let mut cache = PREFIX_CACHE.write().unwrap_or_else(|e| e.into_inner());
        if cache.is_empty() {
            cache.push(Letter::A);
        }
        while cache.len() < n {
            substitute_in_place(&mut cache);
        }
    }
    let cache = PREFIX_CACHE.read().unwrap_or_else(|e| e.into_inner());
    Ok(f(&cache[..n]))
}

/// First `n` letters of the fixed point.
pub fn prefix(n: usize) -> Result<Word, Error> {
    with_prefix(n, |letters| Word::from_letters(letters.to_vec()))
}

/// The block `A_m` or `B_m`; length `2^m`.
pub fn block(kind: BlockKind, m: u32) -> Result<Word, Error> {
    if m > MAX_BLOCK_EXPONENT {
        return Err(Error::BudgetExceeded {
            what: "block exponent",
            requested: m as usize,
            limit: MAX_BLOCK_EXPONENT as usize,
        });
    }
    match kind {
        // A_m is exactly the prefix of length 2^m.
        BlockKind::A => prefix(1usize << m),
        BlockKind::B => {
            let mut buf = vec![Letter::B];
            for _ in 0..m {
                substitute_in_place(&mut buf);
            }
            Ok(Word::from_letters(buf))
        }
    }
}

/// Last letter of `A_m`: `a` for even `m`, `b` for odd `m`.
pub fn delta(m: u32) -> Letter {
    if m.is_multiple_of(2) {
        Letter::A
    } else {
        Letter::B
    }
}

/// Letter at 1-based position `i` of the fixed point, computed by descending
/// the block structure in `O(log i)` without materializing a prefix.
///
/// Position `i` in the image of a word maps to position `ceil(i/2)` in the
/// word itself; odd positions are the first letter of an image (always `a`)
/// and even positions are determined by the parent letter.
pub fn letter_at(i: usize) -> Letter {
    assert!(i >= 1, "positions are 1-based");
    let mut parities = Vec::new();
    let mut idx = i;
    while idx > 1 {
        parities.push(idx.is_multiple_of(2));
        idx = idx.div_ceil(2);
    }
    let mut letter = Letter::A;
    for is_second_of_image in parities.into_iter().rev() {
        letter = if is_second_of_image {
            match letter {
                Letter::A => Letter::B,
                Letter::B => Letter::A,
            }
        } else {
            Letter::A
        };
    }
    letter
}
