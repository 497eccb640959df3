//! Closed-form occurrence positions and combinatorial censuses.
//!
//! The start of the `p`-th occurrence of an envelope word follows from
//! bookkeeping over the theta sequences: `p` copies of the word, the prefix
//! before the first occurrence, and the signed lengths of the gaps realized
//! so far, which are counted through the theta letter counts `N(x, p)`. An
//! arbitrary factor is offset from its envelope by `|mu1|`.
//!
//! The censuses count distinct palindromic factors by length and distinct
//! squares (equivalently cubes) whose first occurrence begins inside a given
//! prefix.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::envelope::{env_of, envelope_word, extension_of, EnvelopeId, EnvelopeIndex};
use crate::error::Error;
use crate::gaps::{theta_prefix, ThetaId, ThetaLetter};
use crate::words::Word;

/// One row of a census table, serialized with the column name shared by the
/// CSV export.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusPoint {
    #[serde(rename = "n_or_N")]
    pub n: usize,
    pub value: usize,
}

/// Number of occurrences of `letter` in the first `p` letters of the chosen
/// theta sequence; zero at `p = 0`.
pub fn letter_count(theta: ThetaId, letter: ThetaLetter, p: usize) -> Result<usize, Error> {
    if !theta.contains(letter) {
        return Err(Error::AlphabetMismatch { theta, letter });
    }
    Ok(theta_prefix(theta, p)?.count(letter))
}

/// 1-based start of the `p`-th occurrence of an envelope word, by closed
/// form.
///
/// With `q = p - 1` and letter counts taken over the first `q` theta
/// letters:
///
/// * family 1: `q * 2^m - N1(b, q) * 2^(m-1) + 1`;
/// * family 2: `(3q + 2) * 2^(m-1) - N2(a, q) * 2^m + N2(b, q) * 2^(m+1) + 1`.
pub fn position_envelope(id: EnvelopeId, p: usize) -> Result<usize, Error> {
    assert!(p >= 1, "occurrence indices are 1-based");
    if id.m() > crate::doubling::MAX_BLOCK_EXPONENT {
        return Err(Error::BudgetExceeded {
            what: "envelope exponent",
            requested: id.m() as usize,
            limit: crate::doubling::MAX_BLOCK_EXPONENT as usize,
        });
    }
    let m = id.m();
    let q = p - 1;
    let half = 1usize << (m - 1);
    match id.index() {
        EnvelopeIndex::One => {
            let n_b = letter_count(ThetaId::Theta1, ThetaLetter::B, q)?;
            Ok(q * (half * 2) - n_b * half + 1)
        }
        EnvelopeIndex::Two => {
            let n_a = letter_count(ThetaId::Theta2, ThetaLetter::A, q)?;
            let n_b = letter_count(ThetaId::Theta2, ThetaLetter::B, q)?;
            Ok((3 * q + 2) * half + n_b * (half * 4) + 1 - n_a * (half * 2))
        }
    }
}

/// 1-based start of the `p`-th occurrence of `w` in the sequence: the
/// envelope's position shifted by the left flank.
pub fn position_of(w: &Word, p: usize) -> Result<usize, Error> {
    let ext = extension_of(w)?;
    Ok(position_envelope(ext.env, p)? + ext.mu1.len())
}

fn palindrome_flank_allowed(id: EnvelopeId, flank: usize) -> bool {
    let m = id.m();
    match id.index() {
        EnvelopeIndex::One => match m {
            1 => flank == 0,
            2 => flank <= 1,
            _ => flank < 3 * (1usize << (m - 3)),
        },
        EnvelopeIndex::Two => flank < (1usize << (m - 1)),
    }
}

/// Shortest palindrome a family can contribute at this `m`; grows
/// geometrically, which bounds the scan below.
fn min_palindrome_len(id: EnvelopeId) -> usize {
    let len = id.word_len();
    let max_flank = match id.index() {
        EnvelopeIndex::One => match id.m() {
            1 => 0,
            2 => 1,
            m => 3 * (1usize << (m - 3)) - 1,
        },
        EnvelopeIndex::Two => (1usize << (id.m() - 1)) - 1,
    };
    len - 2 * max_flank
}

/// Number of distinct palindromic factors of length `n`.
///
/// A palindromic factor sits centered in its envelope word (equal flanks),
/// so the candidates of length `n` are exactly the centered windows of
/// envelope words with matching parity. Flank ranges restrict which windows
/// can still have that envelope as their least envelope; each candidate is
/// confirmed with `env_of` and the survivors are deduplicated.
pub fn palindrome_census(n: usize) -> Result<usize, Error> {
    assert!(n >= 1, "palindrome lengths are positive");
    if n > crate::doubling::MAX_PREFIX_LEN / 4 {
        return Err(Error::BudgetExceeded {
            what: "palindrome length",
            requested: n,
            limit: crate::doubling::MAX_PREFIX_LEN / 4,
        });
    }
    let mut seen = BTreeSet::new();
    let mut m = 1u32;
    loop {
        let ids = [
            EnvelopeId::new(m, EnvelopeIndex::One),
            EnvelopeId::new(m, EnvelopeIndex::Two),
        ];
        if ids.iter().all(|id| min_palindrome_len(*id) > n) {
            break;
        }
        for id in ids {
            let len = id.word_len();
            if len < n || !(len - n).is_multiple_of(2) {
                continue;
            }
            let flank = (len - n) / 2;
            if !palindrome_flank_allowed(id, flank) {
                continue;
            }
            let envelope = envelope_word(id)?;
            let candidate = envelope
                .subword(flank + 1, flank + n)
                .expect("centered window");
            debug_assert!(candidate.is_palindrome());
            if env_of(&candidate)? == id {
                seen.insert(candidate);
            }
        }
        m += 1;
    }
    Ok(seen.len())
}

/// Number of distinct squares whose first occurrence begins in the prefix of
/// length `n`.
///
/// The count increases by one at exactly the starts `N` with
/// `2^m <= N < 3 * 2^(m-1)` for some `m >= 1` (the first square, `aa`,
/// begins at position 3).
pub fn square_census(n: usize) -> usize {
    let mut count = 0usize;
    let mut m = 1u32;
    loop {
        let lo = 1usize << m;
        if lo >= n {
            break;
        }
        let hi = 3 * (1usize << (m - 1));
        count += hi.min(n) - lo;
        m += 1;
    }
    count
}

/// Number of distinct cubes whose first occurrence begins in the prefix of
/// length `n`; coincides with the square count, since every square root also
/// starts a cube at the same position.
pub fn cube_census(n: usize) -> usize {
    square_census(n)
}

/// All distinct squares whose first occurrence starts exactly at `pos`.
///
/// Nonempty exactly when `pos` lies in `[2^m + 1, 3 * 2^(m-1)]` for some
/// `m >= 1`; the list then holds the single square whose root is the window
/// of `E(m, 1)` starting after `pos - 2^m - 1` letters, of length `2^(m-1)`.
pub fn squares_beginning_at(pos: usize) -> Result<Vec<Word>, Error> {
    assert!(pos >= 1, "positions are 1-based");
    let mut m = 1u32;
    loop {
        let lo = (1usize << m) + 1;
        if lo > pos {
            return Ok(Vec::new());
        }
        let hi = 3 * (1usize << (m - 1));
        if pos <= hi {
            let flank = pos - lo;
            let root_len = 1usize << (m - 1);
            let envelope = envelope_word(EnvelopeId::new(m, EnvelopeIndex::One))?;
            let root = envelope
                .subword(flank + 1, flank + root_len)
                .expect("root inside envelope");
            return Ok(vec![root.repeat(2)]);
        }
        m += 1;
    }
}
