use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("mixed number fields in one object: {0}")]
    MixedFields(String),

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("opponent forfeited: {0}")]
    OpponentForfeit(String),

    #[error("game aborted: {0}")]
    GameAborted(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    /// Process exit code used by the command-line frontend.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Precondition(_) | Error::Parse { .. } | Error::MixedFields(_) => 2,
            Error::PrecisionExhausted(_) | Error::GameAborted(_) => 3,
            Error::ResourceCap(_) => 4,
            Error::OpponentForfeit(_) | Error::Io(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Error::Precondition(_) => "precondition",
            Error::Parse { .. } => "parse",
            Error::MixedFields(_) => "mixed_fields",
            Error::PrecisionExhausted(_) => "precision_exhausted",
            Error::ResourceCap(_) => "resource_cap",
            Error::OpponentForfeit(_) => "opponent_forfeit",
            Error::GameAborted(_) => "game_aborted",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
