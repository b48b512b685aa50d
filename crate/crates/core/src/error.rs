use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A size limit (degree cap, enumeration budget, exhaustivity cap) was exceeded.
    #[error("capacity exceeded: {what} is {requested}, limit is {limit}")]
    Capacity {
        what: &'static str,
        requested: u128,
        limit: u128,
    },
    /// Caller broke a documented precondition.
    #[error("contract violation: {0}")]
    Contract(String),
    /// Input lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A rational function cannot be expanded as an integral power series in `Y`.
    #[error("ill-formed series: {0}")]
    IllFormedSeries(String),
    /// The residue-ring precision of a ring spec is too low for the request.
    #[error("precision too low: need p^{needed}, have p^{available}")]
    Precision { needed: u32, available: u32 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
