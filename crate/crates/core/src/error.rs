use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    /// An exact quotient was required but does not exist in Z[v, v^-1].
    #[error("`{dividend}` is not divisible by `{divisor}`")]
    NotDivisible { dividend: String, divisor: String },

    #[error("cannot evaluate a Laurent polynomial at v = 0")]
    EvalAtZero,

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("context mismatch: d = {left} vs d = {right}")]
    ContextMismatch { left: u32, right: u32 },

    #[error("d = {d} exceeds the limit of {max}")]
    DimensionLimit { d: u32, max: u32 },

    #[error("coproduct self-check failed: {0}")]
    CoproductCheckFailed(String),

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// A property that the algebra guarantees did not hold. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
