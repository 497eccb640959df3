//! Envelope words `E(m, i)` and the envelope of an arbitrary factor.
//!
//! The envelope family consists of the palindromic windows
//!
//! * `E(m, 1)`: `A_m` with its last letter removed, length `2^m - 1`;
//! * `E(m, 2)`: `A_{m-1} A_m` with its last letter removed, length
//!   `3 * 2^(m-1) - 1`;
//!
//! for `m >= 1`, totally ordered by `m` first and the family index second.
//! Every factor of the period-doubling sequence is contained in a least
//! envelope word, and occurs there exactly once; the flanks of that single
//! occurrence (`mu1`, `mu2`) are what transfers gap and position formulas
//! from envelope words to arbitrary factors.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::doubling::{block, BlockKind};
use crate::error::Error;
use crate::words::{occurrences, slice_contains, Word};

/// Which of the two envelope families an id belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EnvelopeIndex {
    One = 1,
    Two = 2,
}

impl EnvelopeIndex {
    pub fn as_u8(self) -> u8 {
        self as u8
    }
}

/// Name of one envelope word. Ordered by `m`, then by family index; this is
/// the order in which envelopes are scanned when locating the envelope of a
/// factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EnvelopeId {
    m: u32,
    index: EnvelopeIndex,
}

impl EnvelopeId {
    /// `m` must be at least 1; smaller values do not name envelope words.
    pub fn new(m: u32, index: EnvelopeIndex) -> Self {
        assert!(m >= 1, "envelope words start at m = 1");
        EnvelopeId { m, index }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn index(&self) -> EnvelopeIndex {
        self.index
    }

    /// Length of the named word: `2^m - 1` or `3 * 2^(m-1) - 1`.
    pub fn word_len(&self) -> usize {
        match self.index {
            EnvelopeIndex::One => (1usize << self.m) - 1,
            EnvelopeIndex::Two => 3 * (1usize << (self.m - 1)) - 1,
        }
    }
}

impl fmt::Display for EnvelopeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "E({},{})", self.m, self.index.as_u8())
    }
}

impl FromStr for EnvelopeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let malformed = || Error::MalformedWord(s.to_string());
        let inner = s
            .strip_prefix("E(")
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(malformed)?;
        let (m, i) = inner.split_once(',').ok_or_else(malformed)?;
        let m: u32 = m.trim().parse().map_err(|_| malformed())?;
        let index = match i.trim() {
            "1" => EnvelopeIndex::One,
            "2" => EnvelopeIndex::Two,
            _ => return Err(malformed()),
        };
        if m == 0 {
            return Err(malformed());
        }
        Ok(EnvelopeId::new(m, index))
    }
}

impl Serialize for EnvelopeId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for EnvelopeId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The unique decomposition `envelope = mu1 * factor * mu2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnvelopeExtension {
    pub env: EnvelopeId,
    pub mu1: Word,
    pub mu2: Word,
    pub factor: Word,
}

impl EnvelopeExtension {
    /// Reassembles the envelope word from its three parts.
    pub fn assemble(&self) -> Word {
        self.mu1.concat(&self.factor).concat(&self.mu2)
    }
}

// Envelope words are queried constantly by the scans below; share one copy
// of each materialized word.
static ENVELOPE_CACHE: RwLock<Option<HashMap<EnvelopeId, Arc<Word>>>> = RwLock::new(None);

pub(crate) fn envelope_word_shared(id: EnvelopeId) -> Result<Arc<Word>, Error> {
    {
        let cache = ENVELOPE_CACHE.read().unwrap_or_else(|e| e.into_inner());
        if let Some(word) = cache.as_ref().and_then(|map| map.get(&id)) {
            return Ok(Arc::clone(word));
        }
    }
    let word = Arc::new(build_envelope_word(id)?);
    let mut cache = ENVELOPE_CACHE.write().unwrap_or_else(|e| e.into_inner());
    let map = cache.get_or_insert_with(HashMap::new);
    Ok(Arc::clone(map.entry(id).or_insert(word)))
}

fn build_envelope_word(id: EnvelopeId) -> Result<Word, Error> {
    let a_m = block(BlockKind::A, id.m())?;
    let full = match id.index() {
        EnvelopeIndex::One => a_m,
        EnvelopeIndex::Two => block(BlockKind::A, id.m() - 1)?.concat(&a_m),
    };
    Ok(full
        .subword(1, full.len() - 1)
        .expect("blocks are nonempty"))
}

/// The concrete word named by `id`.
pub fn envelope_word(id: EnvelopeId) -> Result<Word, Error> {
    envelope_word_shared(id).map(|w| (*w).clone())
}

/// True iff `w` occurs in the period-doubling sequence. Checked against the
/// prefix of length `16|w| + 16`, which is comfortably past the point where
/// factor sets of each length stop growing (certified by the verification
/// sweep).
pub fn is_factor_of_sequence(w: &Word) -> bool {
    if w.is_empty() {
        return true;
    }
    let budget = 16 * w.len() + 16;
    crate::doubling::with_prefix(budget, |host| slice_contains(w.letters(), host))
        .expect("membership window exceeds the prefix budget")
}

/// Scan bound for [`env_of`]: every factor `w` occurs in the prefix of length
/// `16|w| + 16`, and `E(k, 1)` is the prefix of length `2^k - 1`, so scanning
/// `m` up to the smallest `k` with `2^k > 16|w| + 16` is guaranteed to find
/// an envelope for every genuine factor.
fn scan_bound(len: usize) -> u32 {
    let mut k = 1u32;
    while (1usize << k) < 16 * len + 17 {
        k += 1;
    }
    k
}

/// The least envelope word containing `w`, scanning ids in order.
pub fn env_of(w: &Word) -> Result<EnvelopeId, Error> {
    if w.is_empty() {
        return Err(Error::EmptyPattern);
    }
    for m in 1..=scan_bound(w.len()) {
        for index in [EnvelopeIndex::One, EnvelopeIndex::Two] {
            let id = EnvelopeId::new(m, index);
            if w.len() > id.word_len() {
                continue;
            }
            let envelope = envelope_word_shared(id)?;
            if slice_contains(w.letters(), envelope.letters()) {
                return Ok(id);
            }
        }
    }
    Err(Error::NotAFactor(w.clone()))
}

/// The unique decomposition of `w`'s envelope word as `mu1 * w * mu2`.
///
/// A genuine factor occurs exactly once in its envelope word; a different
/// occurrence count is reported as
/// [`Error::EnvelopeUniquenessViolated`] rather than silently picking one.
pub fn extension_of(w: &Word) -> Result<EnvelopeExtension, Error> {
    let env = env_of(w)?;
    let envelope = envelope_word_shared(env)?;
    let occs = occurrences(w, &envelope)?;
    if occs.len() != 1 {
        return Err(Error::EnvelopeUniquenessViolated {
            factor: w.clone(),
            env,
            count: occs.len(),
        });
    }
    let at = occs[0];
    Ok(EnvelopeExtension {
        env,
        mu1: envelope
            .subword(1, at.position - 1)
            .expect("flank in range"),
        mu2: envelope
            .subword(at.position + w.len(), envelope.len())
            .expect("flank in range"),
        factor: w.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doubling::substitute;
    use crate::words::is_factor;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn id(m: u32, i: u8) -> EnvelopeId {
        EnvelopeId::new(
            m,
            match i {
                1 => EnvelopeIndex::One,
                _ => EnvelopeIndex::Two,
            },
        )
    }

    #[test]
    fn envelope_word_examples() {
        assert_eq!(envelope_word(id(1, 1)).unwrap(), w("a"));
        assert_eq!(envelope_word(id(2, 1)).unwrap(), w("aba"));
        assert_eq!(envelope_word(id(3, 1)).unwrap(), w("abaaaba"));
        assert_eq!(envelope_word(id(1, 2)).unwrap(), w("aa"));
        assert_eq!(envelope_word(id(2, 2)).unwrap(), w("ababa"));
        assert_eq!(envelope_word(id(3, 2)).unwrap(), w("abaaabaaaba"));
        assert_eq!(envelope_word(id(4, 1)).unwrap(), w("abaaabababaaaba"));
    }

    #[test]
    fn word_lengths_match_ids() {
        for m in 1..=12 {
            for (i, len) in [(1, (1usize << m) - 1), (2, 3 * (1usize << (m - 1)) - 1)] {
                let e = id(m, i);
                assert_eq!(e.word_len(), len);
                assert_eq!(envelope_word(e).unwrap().len(), len);
            }
        }
    }

    #[test]
    fn order_is_total_and_matches_examples() {
        assert!(id(1, 2) < id(2, 1));
        assert!(id(1, 1) < id(1, 2));
        assert!(!(id(2, 1) < id(1, 2)));
    }

    #[test]
    fn membership_examples() {
        assert!(is_factor_of_sequence(&w("aaa")));
        assert!(!is_factor_of_sequence(&w("bb")));
        assert!(is_factor_of_sequence(&w("a")));
    }

    #[test]
    fn env_of_examples() {
        assert_eq!(env_of(&w("bab")).unwrap(), id(2, 2));
        assert_eq!(env_of(&w("aaa")).unwrap(), id(3, 1));
        assert_eq!(env_of(&w("aab")).unwrap(), id(3, 1));
        assert_eq!(env_of(&w("b")).unwrap(), id(2, 1));
        assert!(matches!(env_of(&w("bb")), Err(Error::NotAFactor(_))));
        assert!(matches!(env_of(&Word::empty()), Err(Error::EmptyPattern)));
    }

    #[test]
    fn extension_examples() {
        let ext = extension_of(&w("bab")).unwrap();
        assert_eq!((ext.mu1.clone(), ext.mu2.clone()), (w("a"), w("a")));
        assert_eq!(ext.assemble(), w("ababa"));

        let ext = extension_of(&w("aaa")).unwrap();
        assert_eq!((ext.mu1, ext.mu2), (w("ab"), w("ba")));

        let ext = extension_of(&w("a")).unwrap();
        assert_eq!((ext.mu1, ext.mu2), (Word::empty(), Word::empty()));
    }

    // Substitution carries each envelope word to the next one of its family,
    // short one trailing letter.
    #[test]
    fn substitution_step_between_consecutive_envelopes() {
        for m in 1..=10 {
            for i in [1, 2] {
                let smaller = envelope_word(id(m, i)).unwrap();
                let bigger = envelope_word(id(m + 1, i)).unwrap();
                assert_eq!(substitute(&smaller).concat(&w("a")), bigger);
            }
        }
    }

    #[test]
    fn envelopes_decompose_over_the_previous_family() {
        for m in 1..=10 {
            let e = envelope_word(id(m, 1)).unwrap();
            let d = Word::from_letters(vec![crate::doubling::delta(m)]);
            let one = e.concat(&d).concat(&e);
            let two = e.concat(&d).concat(&e).concat(&d).concat(&e);
            assert_eq!(one, envelope_word(id(m + 1, 1)).unwrap());
            assert_eq!(two, envelope_word(id(m + 1, 2)).unwrap());
        }
    }

    #[test]
    fn envelope_words_are_palindromes() {
        for m in 1..=12 {
            for i in [1, 2] {
                assert!(envelope_word(id(m, i)).unwrap().is_palindrome());
            }
        }
    }

    fn positions(pattern: &Word, host: &Word) -> Vec<usize> {
        occurrences(pattern, host)
            .unwrap()
            .iter()
            .map(|o| o.position)
            .collect()
    }

    #[test]
    fn envelope_occurrences_inside_larger_envelopes() {
        for m in 1..=9u32 {
            let p1 = 1usize << m;
            let p2 = 1usize << (m - 1);
            let e_m1 = envelope_word(id(m, 1)).unwrap();
            let e_m2 = envelope_word(id(m, 2)).unwrap();
            assert_eq!(
                positions(&e_m1, &envelope_word(id(m + 1, 1)).unwrap()),
                vec![1, p1 + 1]
            );
            assert_eq!(positions(&e_m1, &e_m2), vec![1, p2 + 1]);
            assert_eq!(
                positions(&e_m2, &envelope_word(id(m + 2, 1)).unwrap()),
                vec![p1 + 1, 3 * p2 + 1]
            );
            assert_eq!(
                positions(&e_m2, &envelope_word(id(m + 2, 2)).unwrap()),
                vec![p1 + 1, 3 * p2 + 1, 3 * p1 + 1, 7 * p2 + 1]
            );
        }
    }

    #[test]
    fn smaller_family_embeds_but_second_family_skips_one_step() {
        for m in 1..=8u32 {
            let e_m1 = envelope_word(id(m, 1)).unwrap();
            let e_m2 = envelope_word(id(m, 2)).unwrap();
            for mp in m..=10 {
                for i in [1, 2] {
                    assert!(is_factor(&e_m1, &envelope_word(id(mp, i)).unwrap()));
                    if mp >= m + 2 {
                        assert!(is_factor(&e_m2, &envelope_word(id(mp, i)).unwrap()));
                    }
                }
            }
            assert!(!is_factor(&e_m2, &envelope_word(id(m + 1, 1)).unwrap()));
            assert!(!is_factor(&e_m2, &envelope_word(id(m + 1, 2)).unwrap()));
        }
    }

    // The least envelope containing an envelope word is that word itself.
    #[test]
    fn env_of_fixes_envelope_words() {
        for m in 1..=14 {
            for i in [1, 2] {
                let e = id(m, i);
                assert_eq!(env_of(&envelope_word(e).unwrap()).unwrap(), e);
            }
        }
    }

    #[test]
    fn uniqueness_inside_envelope_for_short_factors() {
        let host = crate::doubling::prefix(1 << 10).unwrap();
        for len in 1..=16usize {
            for start in 0..host.len() - len {
                let factor = host.subword(start + 1, start + len).unwrap();
                let envelope = envelope_word(env_of(&factor).unwrap()).unwrap();
                assert_eq!(
                    occurrences(&factor, &envelope).unwrap().len(),
                    1,
                    "{factor}"
                );
            }
        }
    }

    #[test]
    fn id_rendering_round_trips() {
        assert_eq!(id(3, 1).to_string(), "E(3,1)");
        assert_eq!("E(3,1)".parse::<EnvelopeId>().unwrap(), id(3, 1));
        assert!("E(0,1)".parse::<EnvelopeId>().is_err());
        assert!("E(2,3)".parse::<EnvelopeId>().is_err());
    }
}
