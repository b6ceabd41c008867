use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown identifier `{name}` at position {pos}")]
    UnknownIdentifier { name: String, pos: usize },

    #[error("negative exponent at position {pos}")]
    NegativeExponent { pos: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("degree {degree} exceeds the degree guard {limit} ({context})")]
    DegreeGuard {
        degree: u64,
        limit: u32,
        context: String,
    },

    #[error("ambient mismatch: {0}")]
    AmbientMismatch(String),

    #[error("invalid variables: {0}")]
    InvalidVariables(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("inadmissible parameters for {family}: {reason}")]
    Inadmissible { family: String, reason: String },

    #[error("unknown family or table row `{0}`")]
    UnknownFamily(String),

    #[error("integer overflow in oracle computation")]
    Overflow,
}

impl Error {
    pub fn degree_guard(degree: u64, limit: u32, context: impl Into<String>) -> Self {
        Error::DegreeGuard {
            degree,
            limit,
            context: context.into(),
        }
    }

    /// True for errors caused by resource limits rather than bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(self, Error::DegreeGuard { .. } | Error::Overflow)
    }
}
