use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid rational literal {0:?}")]
    ParseRational(String),

    #[error("series mismatch: {0}")]
    SeriesMismatch(String),

    #[error("exponent ({i},{j}) outside truncation orders ({order_0},{order_1})")]
    OutOfTruncation {
        i: usize,
        j: usize,
        order_0: usize,
        order_1: usize,
    },

    #[error("exponential requires a zero constant term")]
    NonzeroConstantTerm,

    #[error("{kind} table covers {have}, need {need}")]
    TableTooSmall {
        kind: &'static str,
        have: usize,
        need: usize,
    },

    #[error("relation out of range for (g,d,b) = ({g},{d},{b})")]
    RelationOutOfRange { g: i64, d: i64, b: i64 },

    #[error("inadmissible parameters: {0}")]
    Inadmissible(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cache: {0}")]
    Cache(String),

    /// An identity that must hold exactly did not.
    #[error("consistency failure: {0}")]
    Consistency(String),
}
