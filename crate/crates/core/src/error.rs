use thiserror::Error;

use crate::envelope::EnvelopeId;
use crate::gaps::{GapRole, ThetaId, ThetaLetter};
use crate::words::Word;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An occurrence query was made with an empty pattern.
    #[error("pattern must be nonempty")]
    EmptyPattern,

    /// The queried word never occurs in the period-doubling sequence.
    #[error("'{0}' is not a factor of the period-doubling sequence")]
    NotAFactor(Word),

    /// A resource bound (block exponent, prefix length, ...) was exceeded.
    #[error("{what} {requested} exceeds the configured limit {limit}")]
    BudgetExceeded {
        what: &'static str,
        requested: usize,
        limit: usize,
    },

    /// A character outside `{a, b}` was used to build a word.
    #[error("letter '{0}' is outside the alphabet {{a, b}}")]
    InvalidLetter(char),

    /// A string could not be parsed as a word.
    #[error("malformed word '{0}': expected letters a/b or \"eps\"")]
    MalformedWord(String),

    /// A letter was counted against a theta sequence whose alphabet lacks it.
    #[error("letter '{letter}' is not in the alphabet of {theta}")]
    AlphabetMismatch { theta: ThetaId, letter: ThetaLetter },

    /// The requested gap role does not exist for this envelope family.
    #[error("gap role {role} is not defined for envelopes like {env}")]
    InvalidRole { env: EnvelopeId, role: GapRole },

    /// A pair of occurrences handed to a gap query was inconsistent.
    #[error("invalid occurrence pair: {0}")]
    BadOccurrencePair(&'static str),

    /// A factor occurred more than once (or never) inside its envelope word.
    /// This cannot happen for genuine factors; it signals a corrupted input.
    #[error("'{factor}' occurs {count} times in its envelope {env}, expected exactly once")]
    EnvelopeUniquenessViolated {
        factor: Word,
        env: EnvelopeId,
        count: usize,
    },
}
