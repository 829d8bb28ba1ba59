use alloc::string::String;
use core::fmt;

/// Result alias used throughout the crate.
pub type Result<T, E = Error> = core::result::Result<T, E>;

/// The rule an increment sequence violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceRule {
    /// No gaps at all.
    Empty,
    /// `gaps[index] <= gaps[index + 1]`.
    NotStrictlyDecreasing {
        /// Position of the offending pair.
        index: usize,
    },
    /// A gap outside `[1, n - 1]`.
    OutOfRange {
        /// The gap.
        gap: usize,
        /// Problem size it was checked against.
        n: usize,
    },
    /// The last gap is not 1, so the final pass would not sort.
    MustEndInOne,
}

impl fmt::Display for SequenceRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SequenceRule::Empty => f.write_str("sequence is empty"),
            SequenceRule::NotStrictlyDecreasing { index } => {
                write!(f, "not strictly decreasing at position {index}")
            }
            SequenceRule::OutOfRange { gap, n } => {
                write!(f, "gap {gap} outside [1, {}] for n = {n}", n.saturating_sub(1).max(1))
            }
            SequenceRule::MustEndInOne => f.write_str("must end in 1"),
        }
    }
}

/// Errors reported by the sorting laboratory.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A scalar argument outside its domain.
    InvalidArgument(String),
    /// A value array that is not a bijection on `1..=n`.
    InvalidPermutation(String),
    /// An increment sequence rejected by validation.
    InvalidSequence(SequenceRule),
    /// A pass trace that no permutation produces.
    CorruptTrace {
        /// Element value (1-based) whose entry could not be honoured.
        element: usize,
        /// Pass (1-based).
        pass: usize,
    },
    /// A network strategy asked for an impossible move.
    IllegalMove {
        /// Zero-based step at which the move was proposed.
        step: usize,
        /// What was wrong with it.
        reason: &'static str,
    },
    /// Exhaustive search ran past its state or size budget.
    SearchBudgetExceeded {
        /// Distinct machine states visited before giving up.
        states: usize,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::InvalidPermutation(msg) => write!(f, "invalid permutation: {msg}"),
            Error::InvalidSequence(rule) => write!(f, "invalid increment sequence: {rule}"),
            Error::CorruptTrace { element, pass } => {
                write!(f, "corrupt trace: entry for element {element} in pass {pass} is infeasible")
            }
            Error::IllegalMove { step, reason } => write!(f, "illegal move at step {step}: {reason}"),
            Error::SearchBudgetExceeded { states } => {
                write!(f, "search budget exceeded after {states} states")
            }
        }
    }
}

impl core::error::Error for Error {}

impl From<SequenceRule> for Error {
    fn from(rule: SequenceRule) -> Self {
        Error::InvalidSequence(rule)
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
