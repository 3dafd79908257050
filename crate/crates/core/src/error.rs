use thiserror::Error;

/// Errors raised by the library. The CLI maps each variant onto an exit code.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{what} exceeded: size {size} > limit {limit}")]
    Cap {
        what: String,
        size: u128,
        limit: u128,
    },

    #[error("no convergence after {iterations} iterations (last change {delta:e})")]
    Convergence { iterations: usize, delta: f64 },

    #[error("law violated: {0}")]
    Law(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn law(msg: impl Into<String>) -> Self {
        Error::Law(msg.into())
    }

    pub fn cap(
        what: impl Into<String>,
        size: impl TryInto<u128>,
        limit: impl TryInto<u128>,
    ) -> Self {
        Error::Cap {
            what: what.into(),
            size: size.try_into().unwrap_or(u128::MAX),
            limit: limit.try_into().unwrap_or(u128::MAX),
        }
    }

    /// Process exit code for this error (2 input, 3 resource cap, 1 otherwise).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) | Error::Parse { .. } | Error::Config(_) | Error::Law(_) => 2,
            Error::Cap { .. } => 3,
            Error::Contract(_) | Error::Convergence { .. } => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
