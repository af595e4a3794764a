use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed graph or character (self-loops, unknown vertices, domain mismatch).
    #[error("structural error: {0}")]
    Structure(String),

    /// An argument outside the documented range of an operation.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// The operation needs a hypothesis on the character that does not hold.
    #[error("unsupported character: {0}")]
    Unsupported(String),

    /// A computed quantity contradicts a structural theorem. Never expected on valid input.
    #[error("internal consistency violation: {0}")]
    Consistency(String),

    #[error("parse error at {location}: {message}")]
    Parse { location: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(location: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            location: location.into(),
            message: message.into(),
        }
    }
}
