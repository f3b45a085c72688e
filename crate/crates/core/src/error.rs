use thiserror::Error;

/// Errors shared by every subsystem of the laboratory.
#[derive(Debug, Error)]
pub enum Error {
    /// A mathematical precondition was violated (supercritical coupling,
    /// nonpositive time, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// An experiment or object was configured inconsistently.
    #[error("config error: {0}")]
    Config(String),
    /// A query asked for data outside what an object holds.
    #[error("query error: {0}")]
    Query(String),
    /// A numerical failure flag (e.g. a nonpositive field value where the
    /// scheme guarantees positivity, indicating unstable parameters).
    #[error("numerical failure: {0}")]
    Numerical(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
    pub fn config(msg: impl Into<String>) -> Self {
        Error::Config(msg.into())
    }
    pub fn query(msg: impl Into<String>) -> Self {
        Error::Query(msg.into())
    }
    pub fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
