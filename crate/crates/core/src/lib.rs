//! Envelope words and gap sequences of the period-doubling sequence.
//!
//! The period-doubling sequence is the fixed point
//!
//! ```text
//! abaaabab abaaabaa abaaabab abaaabab ...
//! ```
//!
//! of the substitution `a -> ab`, `b -> aa`. Every factor of it recurs
//! infinitely often, and the word between two consecutive occurrences (the
//! *gap*) follows a rigid pattern: each factor realizes either exactly two or
//! exactly three distinct gap values, arranged like one of two fixed
//! sequences over the gap alphabet. The key to all of it is the factor's
//! *envelope*: the least member of a family of palindromic windows `E(m, i)`
//! that contains the factor, necessarily exactly once.
//!
//! From that single containment the crate derives, in closed form, the gap
//! values of any factor, the exact start position of its `p`-th occurrence,
//! and censuses of palindromes, squares and cubes. A brute-force oracle and a
//! differential sweep certify every formula at desk scale.
//!
//! ```
//! use pdseq::envelope::{env_of, extension_of};
//! use pdseq::gaps::gap_sequence;
//!
//! let factor: pdseq::Word = "bab".parse()?;
//! let ext = extension_of(&factor)?;
//! assert_eq!(ext.env.to_string(), "E(2,2)");
//! assert_eq!(ext.assemble().to_string(), "ababa");
//!
//! // Three distinct gap values, patterned a b a c a c a b ...
//! let gaps = gap_sequence(&factor, 4)?;
//! assert_eq!(gaps[0].1.to_string(), "(b)^-1");
//! assert_eq!(gaps[1].1.to_string(), "aaabaaabaaa");
//! assert_eq!(env_of(&factor)?, ext.env);
//! # Ok::<(), pdseq::Error>(())
//! ```
//!
//! Module map:
//!
//! * [`words`]: the `{a, b}` word algebra and naive occurrence scans;
//! * [`doubling`]: the substitution, its blocks, and fixed-point prefixes;
//! * [`envelope`]: envelope words, their order, and envelope extensions;
//! * [`gaps`]: gap values, theta sequences, and the factor classification;
//! * [`census`]: occurrence positions and palindrome/square/cube censuses;
//! * [`verify`]: the brute-force oracle and the differential sweep.

pub mod census;
pub mod doubling;
pub mod envelope;
mod error;
pub mod gaps;
pub mod verify;
pub mod words;

pub use census::CensusPoint;
pub use envelope::{EnvelopeExtension, EnvelopeId, EnvelopeIndex};
pub use error::Error;
pub use gaps::{FactorClass, Gap, GapKind, GapRole, ThetaId, ThetaLetter, ThetaWord};
pub use verify::{ClaimKind, Divergence, Fault, SweepConfig, SweepReport};
pub use words::{Letter, Occurrence, Word};
