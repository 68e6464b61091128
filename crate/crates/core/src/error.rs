//! Error type shared by every module of the crate.

use crate::bases::Violation;

/// Errors surfaced by scalar arithmetic, tuple validation, expansion and
/// classification routines.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum Error {
    /// Two scalars from different arithmetic modes (or float modes with
    /// different tolerances) met in one operation.
    #[error("operands use different arithmetic modes")]
    ModeMismatch,

    /// Exact division by zero, or a zero denominator in a rational literal.
    #[error("division by zero")]
    DivisionByZero,

    /// A float-mode comparison landed inside the tolerance band, so the
    /// operation cannot pick a side without inventing precision.
    #[error("comparison is ambiguous within the float tolerance: {0}")]
    BoundaryAmbiguity(String),

    /// A digit exceeds the alphabet maximum of its word or tuple.
    #[error("digit {digit} exceeds the alphabet maximum {max}")]
    DigitOutOfRange { digit: u32, max: u32 },

    /// A word and a base tuple disagree about the alphabet size.
    #[error("alphabet mismatch: word uses digits 0..={word_max}, tuple expects 0..={tuple_max}")]
    AlphabetMismatch { word_max: u32, tuple_max: u32 },

    /// The base tuple failed the admissibility check; carries the first
    /// violated mark inequality.
    #[error("base tuple is not admissible: {0}")]
    NotAdmissible(Violation),

    /// A point lies outside the expansion domain `[0, upper]`.
    #[error("value {value} lies outside the expansion domain [0, {upper}]")]
    OutOfDomain { value: String, upper: String },

    /// A stated hypothesis of the invoked relation does not hold for the
    /// given input (e.g. the input value is an excluded endpoint).
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    /// A structural precondition of the operation failed.
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),

    /// The operation is only defined when every base in the tuple is equal.
    #[error("operation requires a constant base tuple")]
    NotConstantBase,

    /// An orbit search exhausted its iteration budget.
    #[error("iteration budget of {budget} exhausted")]
    IterationBudgetExceeded { budget: usize },

    /// Tree enumeration exceeded its node budget.
    #[error("node budget of {budget} exceeded")]
    NodeBudgetExceeded { budget: usize },

    /// Malformed textual input (scalar, word or base list literal).
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
