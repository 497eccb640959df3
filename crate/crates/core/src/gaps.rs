//! Gap words between consecutive occurrences of a factor.
//!
//! Two consecutive occurrences of a factor are either adjacent, separated by
//! a positive word, or overlapped; a [`Gap`] captures all three cases with a
//! signed length (zero, positive, negative). For the period-doubling
//! sequence the whole gap sequence of a factor is governed by its envelope:
//!
//! * envelope family 1: exactly two distinct gap values, patterned like
//!   `Theta1`, the image of the sequence under `a -> a`, `b -> bb`;
//! * envelope family 2: exactly three distinct gap values, patterned like
//!   `Theta2`, the image under `a -> ab`, `b -> acac`.
//!
//! Theta letters name gap roles via `a -> G1`, `b -> G2`, `c -> G4`. The
//! closed forms for envelope words live in [`envelope_gap`]; arbitrary
//! factors transfer through the flanks `mu1`/`mu2` of their envelope
//! extension, and [`gap_of`] reads the concrete letters straight from the
//! sequence.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::census::position_of;
use crate::doubling::{self, block, delta, BlockKind};
use crate::envelope::{env_of, EnvelopeId, EnvelopeIndex};
use crate::error::Error;
use crate::words::{Letter, Occurrence, Word};

/// How two consecutive occurrences of a factor relate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GapKind {
    Adjacent,
    Separated,
    Overlapped,
}

impl fmt::Display for GapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GapKind::Adjacent => "adjacent",
            GapKind::Separated => "separated",
            GapKind::Overlapped => "overlapped",
        };
        write!(f, "{s}")
    }
}

/// The word between (or shared by) two consecutive occurrences.
///
/// * adjacent: empty body, signed length `0`;
/// * separated: body holds the letters in between, signed length `+|body|`;
/// * overlapped: body holds the shared region, signed length `-|body|`.
///
/// Renders as `eps`, the raw letters, or `(letters)^-1` respectively.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Gap {
    kind: GapKind,
    body: Word,
    signed_length: i64,
}

impl Gap {
    pub fn adjacent() -> Gap {
        Gap {
            kind: GapKind::Adjacent,
            body: Word::empty(),
            signed_length: 0,
        }
    }

    pub fn separated(body: Word) -> Gap {
        assert!(!body.is_empty(), "separated gaps have a nonempty body");
        let signed_length = body.len() as i64;
        Gap {
            kind: GapKind::Separated,
            body,
            signed_length,
        }
    }

    pub fn overlapped(body: Word) -> Gap {
        assert!(!body.is_empty(), "overlapped gaps have a nonempty body");
        let signed_length = -(body.len() as i64);
        Gap {
            kind: GapKind::Overlapped,
            body,
            signed_length,
        }
    }

    pub fn kind(&self) -> GapKind {
        self.kind
    }

    pub fn body(&self) -> &Word {
        &self.body
    }

    pub fn signed_length(&self) -> i64 {
        self.signed_length
    }
}

impl fmt::Display for Gap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GapKind::Adjacent => write!(f, "eps"),
            GapKind::Separated => write!(f, "{}", self.body),
            GapKind::Overlapped => write!(f, "({})^-1", self.body),
        }
    }
}

// Deserialization re-derives the gap from kind and body so a hand-edited
// signed length can never disagree with them.
impl<'de> Deserialize<'de> for Gap {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            kind: GapKind,
            body: Word,
            signed_length: i64,
        }
        let raw = Raw::deserialize(deserializer)?;
        let gap = match raw.kind {
            GapKind::Adjacent if raw.body.is_empty() => Gap::adjacent(),
            GapKind::Separated if !raw.body.is_empty() => Gap::separated(raw.body),
            GapKind::Overlapped if !raw.body.is_empty() => Gap::overlapped(raw.body),
            _ => return Err(serde::de::Error::custom("gap kind does not match body")),
        };
        if gap.signed_length != raw.signed_length {
            return Err(serde::de::Error::custom(
                "signed length does not match body",
            ));
        }
        Ok(gap)
    }
}

/// Role of a gap within a gap sequence, named after the theta letters that
/// select it: `a -> G1`, `b -> G2`, `c -> G4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum GapRole {
    G1,
    G2,
    G4,
}

impl fmt::Display for GapRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            GapRole::G1 => "G1",
            GapRole::G2 => "G2",
            GapRole::G4 => "G4",
        };
        write!(f, "{s}")
    }
}

/// Classification of factors by envelope family and length. Family-2 factors
/// are all `T4`; family-1 factors split by comparing their length against
/// `2^(m-1)`, which fixes the sign of their second gap value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FactorClass {
    T1,
    T2,
    T3,
    T4,
}

impl fmt::Display for FactorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FactorClass::T1 => "T1",
            FactorClass::T2 => "T2",
            FactorClass::T3 => "T3",
            FactorClass::T4 => "T4",
        };
        write!(f, "{s}")
    }
}

/// Which of the two gap-pattern sequences is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ThetaId {
    Theta1,
    Theta2,
}

impl fmt::Display for ThetaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ThetaId::Theta1 => "Theta1",
            ThetaId::Theta2 => "Theta2",
        };
        write!(f, "{s}")
    }
}

impl ThetaId {
    /// The theta sequence governing factors of the given envelope family.
    pub fn for_family(index: EnvelopeIndex) -> ThetaId {
        match index {
            EnvelopeIndex::One => ThetaId::Theta1,
            EnvelopeIndex::Two => ThetaId::Theta2,
        }
    }

    pub fn contains(self, letter: ThetaLetter) -> bool {
        match self {
            ThetaId::Theta1 => letter != ThetaLetter::C,
            ThetaId::Theta2 => true,
        }
    }
}

/// Letter of a theta sequence; `Theta1` uses `{a, b}`, `Theta2` uses
/// `{a, b, c}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum ThetaLetter {
    A,
    B,
    C,
}

impl ThetaLetter {
    pub fn as_char(self) -> char {
        match self {
            ThetaLetter::A => 'a',
            ThetaLetter::B => 'b',
            ThetaLetter::C => 'c',
        }
    }

    /// The gap role this letter selects.
    pub fn role(self) -> GapRole {
        match self {
            ThetaLetter::A => GapRole::G1,
            ThetaLetter::B => GapRole::G2,
            ThetaLetter::C => GapRole::G4,
        }
    }
}

impl fmt::Display for ThetaLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// A finite word over the theta alphabet `{a, b, c}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct ThetaWord(Vec<ThetaLetter>);

impl ThetaWord {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[ThetaLetter] {
        &self.0
    }

    /// Letter at 1-based position `p`.
    pub fn letter(&self, p: usize) -> Option<ThetaLetter> {
        if p == 0 {
            return None;
        }
        self.0.get(p - 1).copied()
    }

    pub fn count(&self, letter: ThetaLetter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }
}

impl fmt::Display for ThetaWord {
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

fn theta_image(id: ThetaId, letter: Letter) -> &'static [ThetaLetter] {
    use ThetaLetter::{A, B, C};
    match (id, letter) {
        (ThetaId::Theta1, Letter::A) => &[A],
        (ThetaId::Theta1, Letter::B) => &[B, B],
        (ThetaId::Theta2, Letter::A) => &[A, B],
        (ThetaId::Theta2, Letter::B) => &[A, C, A, C],
    }
}

/// First `n` letters of the chosen theta sequence, the letter-wise image of
/// the period-doubling sequence under the sequence's substitution.
pub fn theta_prefix(id: ThetaId, n: usize) -> Result<ThetaWord, Error> {
    if n == 0 {
        return Ok(ThetaWord::default());
    }
    // Every source letter contributes at least one theta letter.
    doubling::with_prefix(n, |source| {
        let mut out = Vec::with_capacity(n + 3);
        for &letter in source {
            out.extend_from_slice(theta_image(id, letter));
            if out.len() >= n {
                break;
            }
        }
        out.truncate(n);
        ThetaWord(out)
    })
}

/// The gap determined by two occurrences of `w` in a common host.
///
/// Both occurrences must genuinely match `w` inside `host` and come in
/// ascending order; the body letters are read from the host.
pub fn gap_between(
    w: &Word,
    host: &Word,
    first: Occurrence,
    second: Occurrence,
) -> Result<Gap, Error> {
    if first.position >= second.position {
        return Err(Error::BadOccurrencePair(
            "occurrences must be in ascending order",
        ));
    }
    for occ in [first, second] {
        if occ.length != w.len() {
            return Err(Error::BadOccurrencePair(
                "occurrence length differs from the pattern",
            ));
        }
        match host.subword(occ.position, occ.end()) {
            Some(window) if window == *w => {}
            _ => {
                return Err(Error::BadOccurrencePair(
                    "occurrence does not match the pattern",
                ))
            }
        }
    }
    Ok(gap_from_bounds(first.end(), second.position, host))
}

/// Gap between an occurrence ending at `first_end` and one starting at
/// `second_start` (both 1-based, `second_start > first occurrence start`).
pub(crate) fn gap_from_bounds(first_end: usize, second_start: usize, host: &Word) -> Gap {
    if first_end + 1 == second_start {
        Gap::adjacent()
    } else if first_end + 1 < second_start {
        Gap::separated(
            host.subword(first_end + 1, second_start - 1)
                .expect("gap in host"),
        )
    } else {
        Gap::overlapped(
            host.subword(second_start, first_end)
                .expect("overlap in host"),
        )
    }
}

/// Closed form of the gap values realized by an envelope word.
///
/// Family 1 has two values:
/// * `G1`: the single letter `delta_m`, separated;
/// * `G2`: overlap of the whole previous envelope `E(m-1, 1)`; collapses to
///   the adjacent gap when `m = 1`.
///
/// Family 2 has three values:
/// * `G1`: overlap of `E(m, 1)`;
/// * `G2`: `delta_m * B_{m+1}`, separated, length `2^(m+1) + 1`;
/// * `G4`: the single letter `delta_m`, separated.
pub fn envelope_gap(id: EnvelopeId, role: GapRole) -> Result<Gap, Error> {
    let m = id.m();
    let delta_word = Word::from_letters(vec![delta(m)]);
    match (id.index(), role) {
        (EnvelopeIndex::One, GapRole::G1) => Ok(Gap::separated(delta_word)),
        (EnvelopeIndex::One, GapRole::G2) => {
            if m == 1 {
                Ok(Gap::adjacent())
            } else {
                let body =
                    crate::envelope::envelope_word(EnvelopeId::new(m - 1, EnvelopeIndex::One))?;
                Ok(Gap::overlapped(body))
            }
        }
        (EnvelopeIndex::Two, GapRole::G1) => {
            let body = crate::envelope::envelope_word(EnvelopeId::new(m, EnvelopeIndex::One))?;
            Ok(Gap::overlapped(body))
        }
        (EnvelopeIndex::Two, GapRole::G2) => {
            let body = delta_word.concat(&block(BlockKind::B, m + 1)?);
            Ok(Gap::separated(body))
        }
        (EnvelopeIndex::Two, GapRole::G4) => Ok(Gap::separated(delta_word)),
        (EnvelopeIndex::One, GapRole::G4) => Err(Error::InvalidRole { env: id, role }),
    }
}

/// Prefix of the sequence before the first occurrence of an envelope word:
/// empty for family 1, the block `A_m` for family 2.
pub fn envelope_gap0(id: EnvelopeId) -> Result<Word, Error> {
    match id.index() {
        EnvelopeIndex::One => Ok(Word::empty()),
        EnvelopeIndex::Two => block(BlockKind::A, id.m()),
    }
}

/// Class of a factor: `T4` for envelope family 2, otherwise `T1`/`T2`/`T3`
/// by comparing the length against `2^(m-1)`.
pub fn classify(w: &Word) -> Result<FactorClass, Error> {
    let env = env_of(w)?;
    if env.index() == EnvelopeIndex::Two {
        return Ok(FactorClass::T4);
    }
    let half = 1usize << (env.m() - 1);
    Ok(match w.len().cmp(&half) {
        std::cmp::Ordering::Less => FactorClass::T1,
        std::cmp::Ordering::Equal => FactorClass::T2,
        std::cmp::Ordering::Greater => FactorClass::T3,
    })
}

/// The gap between the `p`-th and `(p+1)`-th occurrences of `w`, with the
/// body letters read from the sequence at the positions given by the
/// closed-form position formulas.
pub fn gap_of(w: &Word, p: usize) -> Result<Gap, Error> {
    assert!(p >= 1, "gap indices are 1-based");
    let start = position_of(w, p)?;
    let next = position_of(w, p + 1)?;
    let first_end = start + w.len() - 1;
    let needed = next + w.len() - 1;
    doubling::with_prefix(needed, |host| {
        let host = Word::from_letters(host[..needed].to_vec());
        gap_from_bounds(first_end, next, &host)
    })
}

/// Prefix of the sequence before the first occurrence of `w`.
pub fn gap0_of(w: &Word) -> Result<Word, Error> {
    let first = position_of(w, 1)?;
    doubling::prefix(first - 1)
}

/// The first `n` gaps of `w` together with their roles, read off the theta
/// sequence of its envelope family.
pub fn gap_sequence(w: &Word, n: usize) -> Result<Vec<(GapRole, Gap)>, Error> {
    let env = env_of(w)?;
    let theta = theta_prefix(ThetaId::for_family(env.index()), n)?;
    (1..=n)
        .map(|p| {
            let role = theta.letter(p).expect("prefix long enough").role();
            Ok((role, gap_of(w, p)?))
        })
        .collect()
}

/// Predicts how occurrences `p` and `p+1` of `w` relate, from the factor
/// class and the theta letter alone, without computing the gap:
///
/// * `T1`: always separated;
/// * `T2`: adjacent on theta letter `b`, separated on `a`;
/// * `T3`: overlapped on theta letter `b`, separated on `a`;
/// * `T4`: overlapped on theta letter `a`, separated on `b` and `c`.
pub fn relation_at(w: &Word, p: usize) -> Result<GapKind, Error> {
    assert!(p >= 1, "gap indices are 1-based");
    let class = classify(w)?;
    let theta = ThetaId::for_family(match class {
        FactorClass::T4 => EnvelopeIndex::Two,
        _ => EnvelopeIndex::One,
    });
    let letter = theta_prefix(theta, p)?
        .letter(p)
        .expect("prefix long enough");
    Ok(match class {
        FactorClass::T1 => GapKind::Separated,
        FactorClass::T2 => {
            if letter == ThetaLetter::B {
                GapKind::Adjacent
            } else {
                GapKind::Separated
            }
        }
        FactorClass::T3 => {
            if letter == ThetaLetter::B {
                GapKind::Overlapped
            } else {
                GapKind::Separated
            }
        }
        FactorClass::T4 => {
            if letter == ThetaLetter::A {
                GapKind::Overlapped
            } else {
                GapKind::Separated
            }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::doubling::prefix;
    use crate::words::occurrences;

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
    fn gap_between_the_printed_occurrences() {
        let host = prefix(32).unwrap();
        let occs = occurrences(&w("aa"), &host).unwrap();
        let overlap = gap_between(&w("aa"), &host, occs[0], occs[1]).unwrap();
        assert_eq!(overlap, Gap::overlapped(w("a")));
        assert_eq!(overlap.signed_length(), -1);
        let separated = gap_between(&w("aa"), &host, occs[1], occs[2]).unwrap();
        assert_eq!(separated, Gap::separated(w("babab")));

        let occs = occurrences(&w("aab"), &host).unwrap();
        assert_eq!(
            occs.iter().map(|o| o.position).collect::<Vec<_>>(),
            vec![4, 12, 16, 20, 28]
        );
        let gap = gap_between(&w("aab"), &host, occs[1], occs[2]).unwrap();
        assert_eq!(gap, Gap::separated(w("a")));
    }

    #[test]
    fn gap_between_rejects_bad_pairs() {
        let host = prefix(32).unwrap();
        let occs = occurrences(&w("aa"), &host).unwrap();
        assert!(matches!(
            gap_between(&w("aa"), &host, occs[1], occs[0]),
            Err(Error::BadOccurrencePair(_))
        ));
        let fake = Occurrence::new(2, 2);
        assert!(matches!(
            gap_between(&w("aa"), &host, fake, occs[1]),
            Err(Error::BadOccurrencePair(_))
        ));
        let wrong_len = Occurrence::new(3, 3);
        assert!(matches!(
            gap_between(&w("aa"), &host, wrong_len, occs[2]),
            Err(Error::BadOccurrencePair(_))
        ));
    }

    #[test]
    fn envelope_gap_closed_forms() {
        assert_eq!(
            envelope_gap(id(1, 2), GapRole::G2).unwrap(),
            Gap::separated(w("babab"))
        );
        assert_eq!(
            envelope_gap(id(1, 1), GapRole::G2).unwrap(),
            Gap::adjacent()
        );
        let g = envelope_gap(id(2, 2), GapRole::G1).unwrap();
        assert_eq!(g, Gap::overlapped(w("aba")));
        assert_eq!(g.signed_length(), -3);
        assert_eq!(
            envelope_gap(id(2, 1), GapRole::G1).unwrap(),
            Gap::separated(w("a"))
        );
        assert_eq!(
            envelope_gap(id(2, 2), GapRole::G4).unwrap(),
            Gap::separated(w("a"))
        );
        assert!(matches!(
            envelope_gap(id(3, 1), GapRole::G4),
            Err(Error::InvalidRole { .. })
        ));
    }

    #[test]
    fn envelope_gap0_examples() {
        assert_eq!(envelope_gap0(id(3, 1)).unwrap(), Word::empty());
        assert_eq!(envelope_gap0(id(1, 2)).unwrap(), w("ab"));
        assert_eq!(envelope_gap0(id(2, 2)).unwrap(), w("abaa"));
    }

    #[test]
    fn theta_prefixes() {
        assert_eq!(
            theta_prefix(ThetaId::Theta1, 8).unwrap().to_string(),
            "abbaaabb"
        );
        assert_eq!(
            theta_prefix(ThetaId::Theta2, 8).unwrap().to_string(),
            "abacacab"
        );
        assert!(theta_prefix(ThetaId::Theta1, 0).unwrap().is_empty());
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify(&w("aab")).unwrap(), FactorClass::T1);
        assert_eq!(classify(&w("ab")).unwrap(), FactorClass::T2);
        assert_eq!(classify(&w("bab")).unwrap(), FactorClass::T4);
        assert_eq!(classify(&w("a")).unwrap(), FactorClass::T2);
        assert_eq!(classify(&w("aba")).unwrap(), FactorClass::T3);
    }

    #[test]
    fn gap_of_examples() {
        assert_eq!(gap_of(&w("aa"), 1).unwrap(), Gap::overlapped(w("a")));
        assert_eq!(gap_of(&w("aab"), 1).unwrap(), Gap::separated(w("ababa")));
        assert_eq!(
            gap_of(&w("bab"), 2).unwrap(),
            Gap::separated(w("aaabaaabaaa"))
        );
    }

    #[test]
    fn gap0_examples() {
        assert_eq!(gap0_of(&w("aab")).unwrap(), w("aba"));
        assert_eq!(gap0_of(&w("a")).unwrap(), Word::empty());
        assert_eq!(gap0_of(&w("bab")).unwrap(), w("abaaa"));
    }

    #[test]
    fn gap_sequences_with_roles() {
        let seq = gap_sequence(&w("aba"), 4).unwrap();
        assert_eq!(
            seq,
            vec![
                (GapRole::G1, Gap::separated(w("a"))),
                (GapRole::G2, Gap::overlapped(w("a"))),
                (GapRole::G2, Gap::overlapped(w("a"))),
                (GapRole::G1, Gap::separated(w("a"))),
            ]
        );

        let seq = gap_sequence(&w("aa"), 4).unwrap();
        assert_eq!(
            seq,
            vec![
                (GapRole::G1, Gap::overlapped(w("a"))),
                (GapRole::G2, Gap::separated(w("babab"))),
                (GapRole::G1, Gap::overlapped(w("a"))),
                (GapRole::G4, Gap::separated(w("b"))),
            ]
        );

        let envelope_two_one = crate::envelope::envelope_word(id(2, 1)).unwrap();
        let seq = gap_sequence(&envelope_two_one, 2).unwrap();
        assert_eq!(
            seq,
            vec![
                (GapRole::G1, Gap::separated(w("a"))),
                (GapRole::G2, Gap::overlapped(w("a"))),
            ]
        );
    }

    #[test]
    fn relation_predictions() {
        assert_eq!(relation_at(&w("ab"), 2).unwrap(), GapKind::Adjacent);
        assert_eq!(relation_at(&w("aba"), 2).unwrap(), GapKind::Overlapped);
        assert_eq!(relation_at(&w("aab"), 3).unwrap(), GapKind::Separated);
    }

    #[test]
    fn overlap_bodies_are_borders() {
        for factor in ["aa", "aba", "ababa", "abaaaba"] {
            let factor = w(factor);
            for p in 1..=10usize {
                let gap = gap_of(&factor, p).unwrap();
                if gap.kind() == GapKind::Overlapped {
                    assert!(factor.starts_with(gap.body()));
                    assert!(factor.ends_with(gap.body()));
                }
                let predicted = relation_at(&factor, p).unwrap();
                assert_eq!(predicted, gap.kind());
            }
        }
    }

    #[test]
    fn rendering() {
        assert_eq!(Gap::adjacent().to_string(), "eps");
        assert_eq!(Gap::separated(w("babab")).to_string(), "babab");
        assert_eq!(Gap::overlapped(w("a")).to_string(), "(a)^-1");
    }
}
