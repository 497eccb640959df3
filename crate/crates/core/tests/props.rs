//! Property tests for the word algebra and the serialized forms.

use proptest::prelude::*;

use pdseq::doubling::{letter_at, prefix, substitute};
use pdseq::gaps::Gap;
use pdseq::words::{is_factor, occurrences, Letter, Word};

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![Just(Letter::A), Just(Letter::B)]
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(), 0..=max_len).prop_map(Word::from_letters)
}

fn nonempty_word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(letter(), 1..=max_len).prop_map(Word::from_letters)
}

/// A random factor of the sequence, cut out of a generated prefix.
fn sequence_factor(max_len: usize) -> impl Strategy<Value = Word> {
    (1..=max_len, any::<u16>()).prop_map(move |(len, seed)| {
        let host = prefix(4096).unwrap();
        let start = (seed as usize) % (host.len() - len) + 1;
        host.subword(start, start + len - 1).unwrap()
    })
}

proptest! {
    // Independent quadratic reference for the occurrence scan.
    #[test]
    fn occurrences_match_quadratic_reference(
        pattern in nonempty_word(6),
        host in word(64),
    ) {
        let fast: Vec<usize> = occurrences(&pattern, &host)
            .unwrap()
            .iter()
            .map(|o| o.position)
            .collect();
        let mut reference = Vec::new();
        for start in 1..=host.len() {
            if host.subword(start, start + pattern.len() - 1) == Some(pattern.clone()) {
                reference.push(start);
            }
        }
        prop_assert_eq!(fast, reference);
    }

    #[test]
    fn is_factor_agrees_with_occurrences(
        pattern in nonempty_word(6),
        host in word(64),
    ) {
        prop_assert_eq!(
            is_factor(&pattern, &host),
            !occurrences(&pattern, &host).unwrap().is_empty()
        );
    }

    // In a palindromic host, occurrences of a pattern mirror to occurrences
    // of the reversed pattern.
    #[test]
    fn palindromic_hosts_mirror_occurrences(
        half in word(24),
        middle in word(1),
        pattern in nonempty_word(5),
    ) {
        let host = half.concat(&middle).concat(&half.reversed());
        prop_assert!(host.is_palindrome());
        let mirrored: Vec<usize> = occurrences(&pattern.reversed(), &host)
            .unwrap()
            .iter()
            .map(|o| o.position)
            .collect();
        for occ in occurrences(&pattern, &host).unwrap() {
            let mirror = host.len() + 2 - occ.position - pattern.len();
            prop_assert!(mirrored.contains(&mirror));
        }
    }

    #[test]
    fn reversal_is_an_involution(w in word(64)) {
        prop_assert_eq!(w.reversed().reversed(), w);
    }

    #[test]
    fn concatenation_adds_lengths(u in word(32), v in word(32)) {
        let uv = u.concat(&v);
        prop_assert_eq!(uv.len(), u.len() + v.len());
        prop_assert!(uv.starts_with(&u));
        prop_assert!(uv.ends_with(&v));
    }

    #[test]
    fn random_access_matches_prefixes(i in 1usize..=4096) {
        let host = prefix(4096).unwrap();
        prop_assert_eq!(letter_at(i), host.letter(i).unwrap());
    }

    #[test]
    fn substituted_prefixes_stay_prefixes(n in 0usize..=2048) {
        prop_assert_eq!(substitute(&prefix(n).unwrap()), prefix(2 * n).unwrap());
    }

    #[test]
    fn words_round_trip_through_json(w in word(32)) {
        let json = serde_json::to_string(&w).unwrap();
        let back: Word = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn gaps_round_trip_through_json(body in nonempty_word(16), kind in 0u8..3) {
        let gap = match kind {
            0 => Gap::adjacent(),
            1 => Gap::separated(body),
            _ => Gap::overlapped(body),
        };
        let json = serde_json::to_string(&gap).unwrap();
        let back: Gap = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, gap);
    }

    // The factor transfer machinery holds on random factors: the envelope
    // contains the factor exactly once and the first closed-form position
    // matches a direct scan.
    #[test]
    fn random_factors_sit_once_in_their_envelope(factor in sequence_factor(40)) {
        let ext = pdseq::envelope::extension_of(&factor).unwrap();
        prop_assert_eq!(ext.assemble(), pdseq::envelope::envelope_word(ext.env).unwrap());
        let host = prefix(1 << 14).unwrap();
        let first = occurrences(&factor, &host).unwrap()[0].position;
        prop_assert_eq!(pdseq::census::position_of(&factor, 1).unwrap(), first);
    }
}
