use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("closure overflow: more than {cap} elements")]
    ClosureOverflow { cap: usize },
    #[error("not a semigroup: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: String, b: String, c: String },
    #[error("not a semigroup: {0}")]
    MalformedTable(String),
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("not an idempotent: {0}")]
    NotIdempotent(String),
    #[error("not a monoid")]
    NotAMonoid,
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("{what} out of range: {value}")]
    OutOfRange { what: &'static str, value: usize },
    #[error("unknown builtin {0:?}")]
    UnknownBuiltin(String),
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("invalid identity: {0}")]
    InvalidIdentity(String),
    #[error("search too large: {size} evaluations exceed budget {budget}")]
    SearchTooLarge { size: u128, budget: u128 },
    #[error("rule does not apply here")]
    RuleDoesNotApply,
    #[error("substitution does not cover variable {0:?}")]
    UnboundVariable(String),
    #[error("not in DS")]
    NotInDs,
    #[error("alphabets differ")]
    AlphabetsDiffer,
    #[error("too few factors: got {got}, need at least {need}")]
    TooFewFactors { got: usize, need: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("bounded search inconclusive: {0}")]
    SearchInconclusive(String),
}
