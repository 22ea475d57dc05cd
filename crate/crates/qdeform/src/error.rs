//! Error type shared by all algebra modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An element does not fit the field context it was used with.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("division by zero")]
    DivisionByZero,

    /// A quantity is indistinguishable from zero at its tracked precision,
    /// so the requested operation cannot be carried out reliably.
    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    /// The 2x2 root-finding system has no unique solution.
    #[error("singular system: {0}")]
    SingularSystem(String),

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// Two independent computations of the same quantity disagree.
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),

    /// A structure constant has a pole at t = 0.
    #[error("specialization undefined: {0}")]
    SpecializationUndefined(String),

    #[error("centrality failure: {0}")]
    CentralityFailure(String),

    #[error("decomposition failure: {0}")]
    DecompositionFailure(String),
}
