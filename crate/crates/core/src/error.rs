use thiserror::Error;

/// Error type shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A document could not be parsed. The message names the offending
    /// element where one is known.
    #[error("parse error: {0}")]
    Parse(String),

    /// A structurally well-formed document violates a model constraint
    /// (cycles, dangling endpoints, degree rules, bad coefficients, ...).
    #[error("validation error: {0}")]
    Validation(String),

    /// Matrix dimensions do not line up for the requested operation.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// The modulus is not a prime in the supported range.
    #[error("invalid field modulus {0}")]
    BadModulus(u64),

    /// A square matrix has no inverse over its field.
    #[error("matrix is singular")]
    Singular,

    /// A precondition of the called operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// The requested computation would exceed the stated budget. Work is
    /// refused outright rather than silently downgraded to sampling.
    #[error("budget exceeded: {needed} needed, budget {budget} ({what})")]
    BudgetExceeded {
        what: String,
        needed: u128,
        budget: u128,
    },

    /// An edge subset claimed to be a cut separates no source from the sink.
    #[error("not a cut: {0}")]
    NotACut(String),

    /// The requested quantity has no finite value for this input, e.g. a
    /// blocker for a feeder source that sits directly at a cut-edge tail.
    #[error("no finite value: {0}")]
    Unbounded(String),

    /// A name does not resolve to a node, edge, or built-in object.
    #[error("unknown name: {0}")]
    UnknownName(String),

    /// An internal consistency check failed. Indicates a bug, never user input.
    #[error("internal error: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}
