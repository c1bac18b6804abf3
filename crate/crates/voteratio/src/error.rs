//! Crate-wide error type and result alias.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A numeric argument lies outside its valid domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Input data fails a structural or semantic requirement.
    #[error("data error: {0}")]
    Data(String),

    /// Invalid scenario or command configuration.
    #[error("config error: {0}")]
    Config(String),

    /// Parameter estimation could not produce a valid result.
    #[error("estimation failure: {0}")]
    Estimation(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the CLI: 3 for estimation failures,
    /// 2 for everything else (data, config, i/o).
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Estimation(_) => 3,
            _ => 2,
        }
    }

    /// Prefix the message with a pipeline stage label, keeping the variant.
    pub fn at_stage(self, stage: &str) -> Error {
        match self {
            Error::Domain(m) => Error::Domain(format!("{stage}: {m}")),
            Error::Data(m) => Error::Data(format!("{stage}: {m}")),
            Error::Config(m) => Error::Config(format!("{stage}: {m}")),
            Error::Estimation(m) => Error::Estimation(format!("{stage}: {m}")),
            other => other,
        }
    }
}
