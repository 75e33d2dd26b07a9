//! Error type shared by every module of the crate.

use std::fmt;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Validation and precondition failures.
///
/// Library functions never panic on bad user input; they return one of these
/// variants instead.  Internal consistency violations (which would indicate a
/// bug, not bad input) are guarded by assertions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A generator letter outside 1..=n-1.
    LetterOutOfRange { letter: usize, n: usize },
    /// A sequence that is not a permutation of 1..=n.
    InvalidOneline(String),
    /// Two objects with different ambient sizes were combined.
    SizeMismatch { left: usize, right: usize },
    /// Not a partition of the stated integer.
    InvalidPartition(String),
    /// Blocks that do not form an ordered set partition of 1..=n.
    InvalidSetPartition(String),
    /// Quantum determinants need at least one row/column index.
    EmptyIndexSet,
    /// A crossing mask whose length differs from the word length.
    MaskLength { expected: usize, got: usize },
    /// `t` is not below `u` in the left weak order.
    NotWeaklyBelow { t: String, u: String },
    /// A word that is not a reduced expression for the stated permutation.
    NotReduced { word: String, target: String },
    /// A permutation failing a pattern-avoidance precondition.
    PatternPrecondition { perm: String, required: String },
    /// Malformed textual input.
    Parse(String),
    /// Any other validation failure (CLI argument checks, size guards).
    Invalid(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::LetterOutOfRange { letter, n } => {
                write!(f, "generator letter {letter} out of range 1..={} for n={n}", n.saturating_sub(1))
            }
            Error::InvalidOneline(s) => write!(f, "invalid one-line notation: {s}"),
            Error::SizeMismatch { left, right } => {
                write!(f, "ambient size mismatch: {left} vs {right}")
            }
            Error::InvalidPartition(s) => write!(f, "invalid partition: {s}"),
            Error::InvalidSetPartition(s) => write!(f, "invalid ordered set partition: {s}"),
            Error::EmptyIndexSet => write!(f, "quantum determinant of an empty index set"),
            Error::MaskLength { expected, got } => {
                write!(f, "crossing mask length {got} does not match word length {expected}")
            }
            Error::NotWeaklyBelow { t, u } => {
                write!(f, "{t} is not below {u} in the left weak order")
            }
            Error::NotReduced { word, target } => {
                write!(f, "word [{word}] is not a reduced expression for {target}")
            }
            Error::PatternPrecondition { perm, required } => {
                write!(f, "permutation {perm} does not satisfy pattern precondition: {required}")
            }
            Error::Parse(s) => write!(f, "parse error: {s}"),
            Error::Invalid(s) => write!(f, "invalid input: {s}"),
        }
    }
}

impl std::error::Error for Error {}
