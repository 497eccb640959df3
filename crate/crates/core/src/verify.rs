//! Brute-force oracle and differential sweeps.
//!
//! Every closed form in the crate is certified at desk scale by comparing it
//! against direct scans of a long prefix: occurrence positions, gap values,
//! theta patterns, envelope uniqueness, and the censuses. A sweep walks every
//! distinct factor up to a configured length, runs the whole battery, and
//! reports one [`Divergence`] per broken claim; a healthy build produces
//! none.
//!
//! Pairs `(w, p)` whose `(p+1)`-th occurrence is not confirmed inside the
//! host prefix are skipped and counted, never guessed. The sweep can also be
//! run with a deliberately corrupted theta role map to demonstrate that it is
//! capable of failing.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::census::{
    cube_census, letter_count, palindrome_census, position_envelope, position_of, square_census,
    squares_beginning_at,
};
use crate::doubling::{self, prefix};
use crate::envelope::{env_of, envelope_word, extension_of, EnvelopeId, EnvelopeIndex};
use crate::error::Error;
use crate::gaps::{
    classify, envelope_gap, envelope_gap0, gap0_of, gap_between, gap_of, relation_at, theta_prefix,
    FactorClass, Gap, GapKind, GapRole, ThetaId, ThetaLetter,
};
use crate::words::{occurrences, scan, Letter, Occurrence, Word};

/// Hosts longer than this make naive scans unreasonably slow; sweeps clamp
/// to it and flag the report as incomplete.
const MAX_SWEEP_EXPONENT: u32 = 22;

/// Bounds of a verification sweep.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    /// Longest factor length enumerated.
    pub max_factor_len: usize,
    /// Largest gap index `p` tested per factor.
    pub max_gap_index: usize,
    /// The host is the prefix of length `2^prefix_exponent`.
    pub prefix_exponent: u32,
    /// Also run the pinned golden examples.
    pub seed_examples: bool,
    /// Optional self-test corruption; see [`Fault`].
    pub fault: Option<Fault>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_factor_len: 64,
            max_gap_index: 50,
            prefix_exponent: 16,
            seed_examples: true,
            fault: None,
        }
    }
}

/// Deliberate corruptions used to prove the sweep can fail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Swap the roles selected by theta letters `a` and `b`.
    CorruptThetaRoleMap,
}

/// Which claim a divergence falsifies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClaimKind {
    Gap,
    Position,
    ThetaPattern,
    Census,
    Uniqueness,
    Membership,
}

impl fmt::Display for ClaimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClaimKind::Gap => "gap",
            ClaimKind::Position => "position",
            ClaimKind::ThetaPattern => "theta_pattern",
            ClaimKind::Census => "census",
            ClaimKind::Uniqueness => "uniqueness",
            ClaimKind::Membership => "membership",
        };
        write!(f, "{s}")
    }
}

/// One falsified claim: the witness pair and the two disagreeing renderings.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Divergence {
    pub claim: ClaimKind,
    pub witness: String,
    pub expected: String,
    pub actual: String,
}

impl Divergence {
    fn new(
        claim: ClaimKind,
        witness: impl Into<String>,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
    ) -> Self {
        Divergence {
            claim,
            witness: witness.into(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "claim={} witness={} expected={} actual={}",
            self.claim, self.witness, self.expected, self.actual
        )
    }
}

/// Outcome of a sweep: all divergences plus bookkeeping about coverage.
#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    /// Every falsified claim, sorted for stable output.
    pub divergences: Vec<Divergence>,
    /// Number of factors enumerated.
    pub checked_factors: usize,
    /// Number of `(w, p)` gap pairs actually compared.
    pub checked_pairs: usize,
    /// Pairs skipped because the successor occurrence was not confirmed
    /// inside the host.
    pub skipped_pairs: usize,
    /// True when a resource clamp reduced the requested coverage.
    pub incomplete: bool,
}

impl SweepReport {
    pub fn is_clean(&self) -> bool {
        self.divergences.is_empty()
    }
}

/// Ascending occurrence positions of `w` in the sweep host, by direct scan.
pub fn oracle_occurrences(w: &Word, cfg: &SweepConfig) -> Result<Vec<Occurrence>, Error> {
    if w.is_empty() {
        return Err(Error::EmptyPattern);
    }
    let host_len = 1usize << cfg.prefix_exponent.min(MAX_SWEEP_EXPONENT);
    doubling::with_prefix(host_len, |host| scan(w.letters(), host))
}

fn factor_set(prefix_len: usize, length: usize) -> BTreeSet<Word> {
    doubling::with_prefix(prefix_len, |host| {
        let mut set = BTreeSet::new();
        if length <= host.len() {
            for window in host.windows(length) {
                set.insert(Word::from_letters(window.to_vec()));
            }
        }
        set
    })
    .expect("stabilization windows fit the prefix budget")
}

/// Smallest exponent `k` such that the set of length-`length` factors of the
/// prefix `2^k` equals that of the prefix `2^(k+1)`.
pub fn stabilize(length: usize) -> u32 {
    assert!(length >= 1, "factor lengths are positive");
    let mut k = 1u32;
    while (1usize << k) < length {
        k += 1;
    }
    let mut current = factor_set(1usize << k, length);
    loop {
        let next = factor_set(1usize << (k + 1), length);
        if current == next {
            return k;
        }
        current = next;
        k += 1;
        assert!(
            (1usize << (k + 1)) <= doubling::MAX_PREFIX_LEN,
            "factor set of length {length} failed to stabilize"
        );
    }
}

fn role_for(letter: ThetaLetter, fault: Option<Fault>) -> GapRole {
    match fault {
        Some(Fault::CorruptThetaRoleMap) => match letter {
            ThetaLetter::A => GapRole::G2,
            ThetaLetter::B => GapRole::G1,
            ThetaLetter::C => GapRole::G4,
        },
        None => letter.role(),
    }
}

/// Distinct factors of the host of the given length, in sorted order.
fn distinct_factors(host: &[Letter], length: usize) -> Vec<Word> {
    let mut seen: HashSet<&[Letter]> = HashSet::new();
    if length <= host.len() {
        for window in host.windows(length) {
            seen.insert(window);
        }
    }
    let mut sorted: Vec<&[Letter]> = seen.into_iter().collect();
    sorted.sort();
    sorted
        .into_iter()
        .map(|w| Word::from_letters(w.to_vec()))
        .collect()
}

/// Distinct `k`-th powers visible in `host`, mapped to the 1-based start of
/// their first occurrence.
fn distinct_powers(host: &[Letter], k: usize) -> BTreeMap<Word, usize> {
    let mut map = BTreeMap::new();
    let max_root = host.len() / k;
    for root_len in 1..=max_root {
        'position: for start in 0..=host.len() - k * root_len {
            let root = &host[start..start + root_len];
            for copy in 1..k {
                let offset = start + copy * root_len;
                if &host[offset..offset + root_len] != root {
                    continue 'position;
                }
            }
            let power = Word::from_letters(host[start..start + k * root_len].to_vec());
            map.entry(power).or_insert(start + 1);
        }
    }
    map
}

fn brute_palindrome_count(host: &[Letter], length: usize) -> usize {
    let mut seen: HashSet<&[Letter]> = HashSet::new();
    if length <= host.len() {
        for window in host.windows(length) {
            let palindromic = (0..length / 2).all(|k| window[k] == window[length - 1 - k]);
            if palindromic {
                seen.insert(window);
            }
        }
    }
    seen.len()
}

/// The pinned golden examples; returns a divergence for each mismatch.
pub fn golden_divergences() -> Vec<Divergence> {
    let mut divs = Vec::new();
    let mut check = |claim: ClaimKind, witness: &str, expected: String, actual: String| {
        if expected != actual {
            divs.push(Divergence::new(claim, witness, expected, actual));
        }
    };
    let word = |s: &str| -> Word { s.parse().expect("golden words are valid") };

    let theta1 = theta_prefix(ThetaId::Theta1, 20).map(|t| t.to_string());
    check(
        ClaimKind::ThetaPattern,
        "(Theta1, 20)",
        "abbaaabbabbabbaaabba".into(),
        theta1.unwrap_or_else(|e| e.to_string()),
    );
    let theta2 = theta_prefix(ThetaId::Theta2, 20).map(|t| t.to_string());
    check(
        ClaimKind::ThetaPattern,
        "(Theta2, 20)",
        "abacacabababacacabac".into(),
        theta2.unwrap_or_else(|e| e.to_string()),
    );

    for (p, expected) in [(1usize, "(a)^-1"), (2, "babab")] {
        let actual = gap_of(&word("aa"), p).map(|g| g.to_string());
        check(
            ClaimKind::Gap,
            &format!("(aa, {p})"),
            expected.into(),
            actual.unwrap_or_else(|e| e.to_string()),
        );
    }

    for (factor, expected) in [("bab", "ababa"), ("aaa", "abaaaba")] {
        let actual = env_of(&word(factor))
            .and_then(envelope_word)
            .map(|w| w.to_string());
        check(
            ClaimKind::Uniqueness,
            &format!("({factor}, env)"),
            expected.into(),
            actual.unwrap_or_else(|e| e.to_string()),
        );
    }

    for (letter, p, expected) in [(ThetaLetter::A, 5usize, 3usize), (ThetaLetter::B, 9, 4)] {
        let actual = letter_count(ThetaId::Theta1, letter, p);
        check(
            ClaimKind::ThetaPattern,
            &format!("(Theta1, {letter}, {p})"),
            expected.to_string(),
            actual
                .map(|c| c.to_string())
                .unwrap_or_else(|e| e.to_string()),
        );
    }

    for (n, expected) in [(1usize, 2usize), (2, 1), (3, 3)] {
        let actual = palindrome_census(n);
        check(
            ClaimKind::Census,
            &format!("(palindromes, {n})"),
            expected.to_string(),
            actual
                .map(|c| c.to_string())
                .unwrap_or_else(|e| e.to_string()),
        );
    }

    divs
}

struct Sweeper<'a> {
    cfg: &'a SweepConfig,
    host: Word,
    divergences: Vec<Divergence>,
    checked_factors: usize,
    checked_pairs: usize,
    skipped_pairs: usize,
    env_occurrences: HashMap<EnvelopeId, Vec<Occurrence>>,
}

impl<'a> Sweeper<'a> {
    fn diverge(
        &mut self,
        claim: ClaimKind,
        witness: String,
        expected: impl fmt::Display,
        actual: impl fmt::Display,
    ) {
        self.divergences
            .push(Divergence::new(claim, witness, expected, actual));
    }

    fn env_occurrences(&mut self, env: EnvelopeId) -> Vec<Occurrence> {
        if let Some(cached) = self.env_occurrences.get(&env) {
            return cached.clone();
        }
        let word = envelope_word(env).expect("envelope within budget");
        let occs = occurrences(&word, &self.host).expect("envelope words are nonempty");
        self.env_occurrences.insert(env, occs.clone());
        occs
    }

    fn check_membership_bounds(&mut self) {
        for length in 1..=self.cfg.max_factor_len {
            let exponent = stabilize(length);
            let bound = 16 * length + 16;
            if (1usize << exponent) > bound {
                self.diverge(
                    ClaimKind::Membership,
                    format!("(stabilize, {length})"),
                    format!("2^k <= {bound}"),
                    format!("k = {exponent}"),
                );
            }
        }
    }

    fn check_factor(&mut self, factor: &Word) {
        self.checked_factors += 1;
        let occs = occurrences(factor, &self.host).expect("factors are nonempty");
        let witness = |p: usize| format!("({factor}, {p})");

        let ext = match extension_of(factor) {
            Ok(ext) => ext,
            Err(err) => {
                self.diverge(
                    ClaimKind::Uniqueness,
                    format!("({factor}, env)"),
                    "unique envelope extension",
                    err,
                );
                return;
            }
        };
        let env = ext.env;
        let family = env.index();
        let mu_total = (ext.mu1.len() + ext.mu2.len()) as i64;
        let env_occs = self.env_occurrences(env);

        // Occurrence positions: closed form vs oracle, and the offset law
        // placing each occurrence inside the matching envelope occurrence.
        let occ_limit = occs.len().min(self.cfg.max_gap_index + 1);
        for p in 1..=occ_limit {
            let oracle_position = occs[p - 1].position;
            match position_of(factor, p) {
                Ok(position) if position == oracle_position => {}
                Ok(position) => {
                    self.diverge(ClaimKind::Position, witness(p), oracle_position, position)
                }
                Err(err) => self.diverge(ClaimKind::Position, witness(p), oracle_position, err),
            }
            if p <= env_occs.len() {
                let expected = env_occs[p - 1].position + ext.mu1.len();
                if expected != oracle_position {
                    self.diverge(
                        ClaimKind::Uniqueness,
                        witness(p),
                        format!("occurrence at offset {} in {env}", ext.mu1.len()),
                        format!("{oracle_position} vs expected {expected}"),
                    );
                }
            }
        }

        let gap0 = match gap0_of(factor) {
            Ok(gap0) => {
                if gap0.len() + 1 != occs[0].position {
                    self.diverge(
                        ClaimKind::Position,
                        witness(0),
                        occs[0].position,
                        gap0.len() + 1,
                    );
                }
                gap0
            }
            Err(err) => {
                self.diverge(ClaimKind::Position, witness(0), occs[0].position, err);
                Word::empty()
            }
        };

        // Gap battery over confirmed consecutive pairs.
        let pairs = occs.len().saturating_sub(1).min(self.cfg.max_gap_index);
        self.skipped_pairs += self.cfg.max_gap_index - pairs;
        let theta_id = ThetaId::for_family(family);
        let theta = theta_prefix(theta_id, pairs).expect("theta prefix within budget");
        let class = classify(factor).expect("factor class exists");

        let mut first_gap_by_letter: BTreeMap<ThetaLetter, Gap> = BTreeMap::new();
        let mut distinct_gaps: BTreeSet<String> = BTreeSet::new();
        let mut kinds: Vec<GapKind> = Vec::with_capacity(pairs);
        for p in 1..=pairs {
            self.checked_pairs += 1;
            let oracle_gap = gap_between(factor, &self.host, occs[p - 1], occs[p])
                .expect("confirmed occurrences form a valid pair");

            match gap_of(factor, p) {
                Ok(gap) if gap == oracle_gap => {}
                Ok(gap) => self.diverge(ClaimKind::Gap, witness(p), &oracle_gap, gap),
                Err(err) => self.diverge(ClaimKind::Gap, witness(p), &oracle_gap, err),
            }

            let letter = theta.letter(p).expect("theta prefix long enough");
            let role = role_for(letter, self.cfg.fault);
            match envelope_gap(env, role) {
                Ok(envelope_gap) => {
                    let predicted = mu_total + envelope_gap.signed_length();
                    if oracle_gap.signed_length() != predicted {
                        self.diverge(
                            ClaimKind::ThetaPattern,
                            witness(p),
                            format!("signed length {predicted} via {role}"),
                            oracle_gap.signed_length(),
                        );
                    }
                }
                Err(err) => self.diverge(ClaimKind::ThetaPattern, witness(p), "valid role", err),
            }

            match first_gap_by_letter.get(&letter) {
                Some(first) if *first != oracle_gap => {
                    let first = first.clone();
                    self.diverge(
                        ClaimKind::ThetaPattern,
                        witness(p),
                        format!("gap {first} wherever theta reads {letter}"),
                        &oracle_gap,
                    );
                }
                Some(_) => {}
                None => {
                    first_gap_by_letter.insert(letter, oracle_gap.clone());
                }
            }

            match relation_at(factor, p) {
                Ok(kind) if kind == oracle_gap.kind() => {}
                Ok(kind) => self.diverge(ClaimKind::Gap, witness(p), oracle_gap.kind(), kind),
                Err(err) => self.diverge(ClaimKind::Gap, witness(p), oracle_gap.kind(), err),
            }

            if oracle_gap.kind() == GapKind::Overlapped {
                let body = oracle_gap.body();
                if !(factor.starts_with(body) && factor.ends_with(body)) {
                    self.diverge(
                        ClaimKind::Gap,
                        witness(p),
                        "overlap body is a border of the factor",
                        body,
                    );
                }
            }

            distinct_gaps.insert(oracle_gap.to_string());
            kinds.push(oracle_gap.kind());
        }

        // Cardinality of the gap alphabet, once every role has had a chance
        // to appear (theta reads b by p = 2 and c by p = 4).
        let (expected_distinct, settled_by) = match family {
            EnvelopeIndex::One => (2usize, 2usize),
            EnvelopeIndex::Two => (3usize, 4usize),
        };
        if pairs >= settled_by && distinct_gaps.len() != expected_distinct {
            self.diverge(
                ClaimKind::ThetaPattern,
                format!("({factor}, distinct gaps)"),
                expected_distinct,
                format!("{}: {:?}", distinct_gaps.len(), distinct_gaps),
            );
        }

        // Sign laws for the gap values, by factor class.
        let g1 = first_gap_by_letter.get(&ThetaLetter::A);
        let g2 = first_gap_by_letter.get(&ThetaLetter::B);
        let g4 = first_gap_by_letter.get(&ThetaLetter::C);
        match family {
            EnvelopeIndex::One => {
                if let Some(g1) = g1 {
                    if g1.signed_length() <= 0 {
                        self.diverge(ClaimKind::Gap, witness(1), "G1 > 0", g1);
                    }
                }
                if let Some(g2) = g2 {
                    let half = 1usize << (env.m() - 1);
                    let expected_sign = match factor.len().cmp(&half) {
                        std::cmp::Ordering::Less => 1,
                        std::cmp::Ordering::Equal => 0,
                        std::cmp::Ordering::Greater => -1,
                    };
                    if g2.signed_length().signum() != expected_sign {
                        self.diverge(
                            ClaimKind::Gap,
                            format!("({factor}, G2 sign)"),
                            format!("sign {expected_sign} for class {class}"),
                            g2.signed_length(),
                        );
                    }
                }
            }
            EnvelopeIndex::Two => {
                if class != FactorClass::T4 {
                    self.diverge(
                        ClaimKind::Gap,
                        format!("({factor}, class)"),
                        FactorClass::T4,
                        class,
                    );
                }
                if gap0.is_empty() {
                    self.diverge(ClaimKind::Gap, witness(0), "G0 > 0", "eps");
                }
                for (name, gap, positive) in [("G1", g1, false), ("G2", g2, true), ("G4", g4, true)]
                {
                    if let Some(gap) = gap {
                        let ok = if positive {
                            gap.signed_length() > 0
                        } else {
                            gap.signed_length() < 0
                        };
                        if !ok {
                            self.diverge(
                                ClaimKind::Gap,
                                format!("({factor}, {name} sign)"),
                                if positive { "> 0" } else { "< 0" },
                                gap.signed_length(),
                            );
                        }
                    }
                }
            }
        }

        // Run-length laws: never three adjacent or three overlapped gaps in
        // a row; four or more separated gaps in a row only for class T1.
        for (start, window) in kinds.windows(3).enumerate() {
            if window.iter().all(|&k| k == GapKind::Adjacent) {
                self.diverge(
                    ClaimKind::Gap,
                    witness(start + 1),
                    "at most two consecutive adjacent gaps",
                    "three",
                );
            }
            if window.iter().all(|&k| k == GapKind::Overlapped) {
                self.diverge(
                    ClaimKind::Gap,
                    witness(start + 1),
                    "at most two consecutive overlapped gaps",
                    "three",
                );
            }
        }
        if class != FactorClass::T1 {
            for (start, window) in kinds.windows(4).enumerate() {
                if window.iter().all(|&k| k == GapKind::Separated) {
                    self.diverge(
                        ClaimKind::Gap,
                        witness(start + 1),
                        "four separated gaps in a row only for T1",
                        class,
                    );
                }
            }
        }
    }

    // Envelope words double as factors with exactly known gap values; check
    // the closed forms against the oracle letter for letter.
    fn check_envelope_closed_forms(&mut self) {
        let mut m = 1u32;
        loop {
            let id2 = EnvelopeId::new(m, EnvelopeIndex::Two);
            if id2.word_len() * 8 > self.host.len() {
                break;
            }
            for index in [EnvelopeIndex::One, EnvelopeIndex::Two] {
                let id = EnvelopeId::new(m, index);
                let occs = self.env_occurrences(id);
                if occs.is_empty() {
                    continue;
                }
                let witness = |p: usize| format!("({id}, {p})");

                match envelope_gap0(id) {
                    Ok(gap0) if gap0.len() + 1 == occs[0].position => {}
                    Ok(gap0) => {
                        self.diverge(ClaimKind::Gap, witness(0), occs[0].position, gap0.len() + 1)
                    }
                    Err(err) => self.diverge(ClaimKind::Gap, witness(0), occs[0].position, err),
                }

                let occ_limit = occs.len().min(self.cfg.max_gap_index + 1);
                for p in 1..=occ_limit {
                    match position_envelope(id, p) {
                        Ok(position) if position == occs[p - 1].position => {}
                        Ok(position) => self.diverge(
                            ClaimKind::Position,
                            witness(p),
                            occs[p - 1].position,
                            position,
                        ),
                        Err(err) => {
                            self.diverge(ClaimKind::Position, witness(p), occs[p - 1].position, err)
                        }
                    }
                }

                let pairs = occs.len().saturating_sub(1).min(self.cfg.max_gap_index);
                let theta = theta_prefix(ThetaId::for_family(index), pairs)
                    .expect("theta prefix within budget");
                let word = envelope_word(id).expect("envelope within budget");
                for p in 1..=pairs {
                    let oracle_gap = gap_between(&word, &self.host, occs[p - 1], occs[p])
                        .expect("confirmed occurrences form a valid pair");
                    let letter = theta.letter(p).expect("theta prefix long enough");
                    let role = role_for(letter, self.cfg.fault);
                    match envelope_gap(id, role) {
                        Ok(closed_form) if closed_form == oracle_gap => {}
                        Ok(closed_form) => self.diverge(
                            ClaimKind::ThetaPattern,
                            witness(p),
                            oracle_gap,
                            closed_form,
                        ),
                        Err(err) => {
                            self.diverge(ClaimKind::ThetaPattern, witness(p), oracle_gap, err)
                        }
                    }
                }
            }
            m += 1;
        }
    }

    // The theta sequences must parse back to the source sequence under their
    // defining substitutions: images a/bb for the two-letter sequence, ab/acac
    // for the three-letter one.
    fn check_theta_structure(&mut self) {
        let sample = 1usize << self.cfg.prefix_exponent.min(12);
        let source = prefix(sample).expect("prefix within budget");
        for id in [ThetaId::Theta1, ThetaId::Theta2] {
            let theta = theta_prefix(id, sample).expect("theta prefix within budget");
            let letters = theta.letters();
            let mut parsed = Vec::new();
            let mut at = 0usize;
            while at < letters.len() {
                match (id, letters[at]) {
                    (_, ThetaLetter::A)
                        if id == ThetaId::Theta2
                            && letters.get(at + 1) == Some(&ThetaLetter::C) =>
                    {
                        if letters.get(at + 2) == Some(&ThetaLetter::A)
                            && letters.get(at + 3) == Some(&ThetaLetter::C)
                        {
                            parsed.push(Letter::B);
                            at += 4;
                        } else {
                            break; // truncated image
                        }
                    }
                    (ThetaId::Theta2, ThetaLetter::A) => {
                        if letters.get(at + 1) == Some(&ThetaLetter::B) {
                            parsed.push(Letter::A);
                            at += 2;
                        } else {
                            break;
                        }
                    }
                    (ThetaId::Theta1, ThetaLetter::A) => {
                        parsed.push(Letter::A);
                        at += 1;
                    }
                    (ThetaId::Theta1, ThetaLetter::B) => {
                        if letters.get(at + 1) == Some(&ThetaLetter::B) {
                            parsed.push(Letter::B);
                            at += 2;
                        } else {
                            break;
                        }
                    }
                    (_, unexpected) => {
                        self.diverge(
                            ClaimKind::ThetaPattern,
                            format!("({id}, parse at {})", at + 1),
                            "letter from the image alphabet",
                            unexpected,
                        );
                        return;
                    }
                }
            }
            let parsed = Word::from_letters(parsed);
            let expected = source
                .subword(1, parsed.len())
                .expect("parsed within sample");
            if parsed != expected {
                self.diverge(
                    ClaimKind::ThetaPattern,
                    format!("({id}, parse-back)"),
                    expected,
                    parsed,
                );
            }
        }
    }

    fn check_censuses(&mut self) {
        // Palindromes: formula vs direct count, within the certified lengths.
        let certified = (self.host.len().saturating_sub(16)) / 16;
        let palindrome_cap = certified.min(256);
        for n in 1..=palindrome_cap {
            let brute = brute_palindrome_count(self.host.letters(), n);
            match palindrome_census(n) {
                Ok(count) if count == brute => {}
                Ok(count) => self.diverge(
                    ClaimKind::Census,
                    format!("(palindromes, {n})"),
                    brute,
                    count,
                ),
                Err(err) => {
                    self.diverge(ClaimKind::Census, format!("(palindromes, {n})"), brute, err)
                }
            }
        }

        // Squares and cubes: increment rule vs brute-force count of distinct
        // powers by first occurrence.
        let power_host_len = 1usize << self.cfg.prefix_exponent.min(14);
        let power_host = self.host.letters()[..power_host_len].to_vec();
        let position_cap = power_host_len / 4;
        for (name, k) in [("squares", 2usize), ("cubes", 3)] {
            let census = if k == 2 { square_census } else { cube_census };
            let powers = distinct_powers(&power_host, k);
            let mut starts: Vec<usize> = powers.values().copied().collect();
            starts.sort_unstable();
            let mut covered = 0usize;
            for n in 1..=position_cap {
                while covered < starts.len() && starts[covered] <= n {
                    covered += 1;
                }
                let formula = census(n);
                if formula != covered {
                    self.diverge(
                        ClaimKind::Census,
                        format!("({name}, {n})"),
                        covered,
                        formula,
                    );
                }
            }
            if k == 2 {
                let mut by_start: BTreeMap<usize, Vec<Word>> = BTreeMap::new();
                for (square, start) in &powers {
                    by_start.entry(*start).or_default().push(square.clone());
                }
                for position in 1..=position_cap {
                    let expected = by_start.get(&position).cloned().unwrap_or_default();
                    match squares_beginning_at(position) {
                        Ok(squares) if squares == expected => {}
                        Ok(squares) => self.diverge(
                            ClaimKind::Census,
                            format!("(squares at, {position})"),
                            format!("{expected:?}"),
                            format!("{squares:?}"),
                        ),
                        Err(err) => self.diverge(
                            ClaimKind::Census,
                            format!("(squares at, {position})"),
                            format!("{expected:?}"),
                            err,
                        ),
                    }
                }
            }
        }
    }
}

/// Runs the full differential battery and reports every divergence.
pub fn sweep(cfg: &SweepConfig) -> SweepReport {
    let mut incomplete = false;
    let exponent = if cfg.prefix_exponent > MAX_SWEEP_EXPONENT {
        incomplete = true;
        MAX_SWEEP_EXPONENT
    } else {
        cfg.prefix_exponent
    };
    let host_len = 1usize << exponent;
    let host = prefix(host_len).expect("sweep host within budget");

    // Lengths past the certified stabilization window would enumerate an
    // incomplete factor set.
    let certified = (host_len.saturating_sub(16)) / 16;
    if cfg.max_factor_len > certified {
        incomplete = true;
    }

    let mut sweeper = Sweeper {
        cfg,
        host,
        divergences: Vec::new(),
        checked_factors: 0,
        checked_pairs: 0,
        skipped_pairs: 0,
        env_occurrences: HashMap::new(),
    };

    sweeper.check_membership_bounds();
    for length in 1..=cfg.max_factor_len.min(certified) {
        let factors = distinct_factors(sweeper.host.letters(), length);
        for factor in factors {
            sweeper.check_factor(&factor);
        }
    }
    sweeper.check_envelope_closed_forms();
    sweeper.check_theta_structure();
    sweeper.check_censuses();
    if cfg.seed_examples {
        let golden = golden_divergences();
        sweeper.divergences.extend(golden);
    }

    let mut divergences = sweeper.divergences;
    divergences.sort();
    divergences.dedup();
    SweepReport {
        divergences,
        checked_factors: sweeper.checked_factors,
        checked_pairs: sweeper.checked_pairs,
        skipped_pairs: sweeper.skipped_pairs,
        incomplete,
    }
}
