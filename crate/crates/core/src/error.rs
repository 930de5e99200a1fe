use alloc::string::String;

/// Errors produced by the walk, numeration and automata routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("operands have different radicands ({0} and {1})")]
    MixedRadicand(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("value is rational; a quadratic irrational is required")]
    NotIrrational,
    #[error("radicand must be a positive non-square integer, got {0}")]
    BadRadicand(u64),
    #[error("cannot parse surd literal `{0}`")]
    Parse(String),
    #[error("continued fraction is not a BR-number (an odd-indexed partial quotient is odd)")]
    NotBrNumber,
    #[error("invalid Ostrowski digits: {0}")]
    InvalidDigits(String),
    #[error("digit {digit} is outside the automaton alphabet 0..{bound}")]
    AlphabetMismatch { digit: u64, bound: u64 },
    #[error("unknown automaton fixture `{0}`")]
    UnknownFixture(String),
    #[error("substitution needs an even m >= 2, got {0}")]
    OddM(u64),
    #[error("substitution image of `{0}` does not start with `{0}`")]
    NotProlongable(char),
    #[error("no return within {0} iterations")]
    NoReturn(usize),
    #[error("orbit point landed on a partition boundary")]
    BoundaryHit,
    #[error("check `{check}` failed: {detail}")]
    CheckFailed { check: &'static str, detail: String },
    #[error("value out of range: {0}")]
    OutOfRange(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
