use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} is out of range (must be below 2^31)")]
    ModulusTooLarge(u64),

    #[error("modulus mismatch: {left} vs {right}")]
    ModulusMismatch { left: u32, right: u32 },

    #[error("base mismatch: {left} vs {right}")]
    BaseMismatch { left: u32, right: u32 },

    #[error("invalid pattern set: {0}")]
    InvalidPattern(String),

    #[error("invalid automaton: {0}")]
    InvalidAutomaton(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("cannot parse expression {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("pattern forms overlap: {0}")]
    NotDisjoint(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
