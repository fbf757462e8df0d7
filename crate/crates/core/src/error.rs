use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no prime smaller than {0}")]
    NoSmallerPrime(u64),

    #[error("{0} is a perfect square, its square root has no periodic continued fraction")]
    DegenerateSurd(u64),

    #[error("{d} = {core}·{square_root}^2 is not squarefree")]
    NotSquarefree { d: u64, core: u64, square_root: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A numeric re-derivation of a proof step came out differently than the
    /// argument requires. Seeing this means either the code or the argument is wrong.
    #[error("falsified step: {0}")]
    FalsifiedStep(String),
}
