use crate::bitio::{Underrun, WidthOverflow};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A value lies outside the domain of the code or field it was given to.
    #[error("value out of range: {0}")]
    Range(String),

    #[error(transparent)]
    Underrun(#[from] Underrun),

    /// The stream ended in the middle of a codeword or container field.
    #[error("truncated stream: {0}")]
    Truncated(String),

    /// Decoded values are inconsistent with the container structure.
    #[error("corrupt stream: {0}")]
    Corrupt(String),

    /// Structural problems outside the payload (magic, version, trailing bits).
    #[error("format error: {0}")]
    Format(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("symbol {0} has no codeword")]
    Coverage(u32),

    #[error("level {0} has zero frequency")]
    UndefinedLevel(usize),

    #[error("invalid configuration: {0}")]
    Config(String),

    /// A benchmark round trip did not reproduce its input.
    #[error("verification failed: {0}")]
    Verification(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl From<WidthOverflow> for Error {
    fn from(e: WidthOverflow) -> Self {
        Error::Range(e.to_string())
    }
}

impl Error {
    pub(crate) fn truncated(what: &str, e: Underrun) -> Self {
        Error::Truncated(format!("{what}: {e}"))
    }
}
