use thiserror::Error;

/// Broad classes of failure, used by the command line to pick exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or inconsistent input.
    Input,
    /// The input is valid but the computation is outside its domain of validity.
    Refusal,
    /// A consistency check failed; signals a bug.
    Internal,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("Jacobi identity fails on basis triple ({i}, {j}, {k})")]
    Jacobi { i: usize, j: usize, k: usize },

    #[error("algebra is not nilpotent: lower central series stabilises at rank {rank}")]
    NotNilpotent { rank: usize },

    #[error("prime too small: p = {p} must exceed {constant} = {bound}")]
    PrimeTooSmall {
        p: u64,
        bound: u64,
        constant: &'static str,
    },

    #[error("instance too large: about {estimate:.3e} evaluations exceed the limit {limit:.3e}")]
    TooLarge { estimate: f64, limit: f64 },

    #[error("no witness: the sampled points do not span the leading {l1} coordinates")]
    NoWitness { l1: usize },

    #[error("cannot decode value {value} as a rank signature: {reason}")]
    Decode { value: u128, reason: String },

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::PrimeTooSmall { .. } | Error::TooLarge { .. } | Error::NoWitness { .. } => {
                ErrorKind::Refusal
            }
            Error::Internal(_) => ErrorKind::Internal,
            _ => ErrorKind::Input,
        }
    }

    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
