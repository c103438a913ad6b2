use thiserror::Error;

/// Errors raised by evaluators, the character layer and the harness.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The argument sits on (or within tolerance of) a pole.
    #[error("pole: argument within tolerance of the pole at {nearest}")]
    Pole { nearest: f64 },

    /// The requested evaluation regime cannot deliver a value here.
    #[error("regime error: {0}")]
    Regime(String),

    /// A value or intermediate became NaN or infinite.
    #[error("non-finite result in {0}")]
    NonFinite(&'static str),

    #[error("config error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
