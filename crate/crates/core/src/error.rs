use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("model has {visible} visible + {hidden} hidden nodes; exact enumeration is limited to {limit} total")]
    SizeGuard {
        visible: usize,
        hidden: usize,
        limit: usize,
    },

    #[error("infeasible request: {0}")]
    Infeasible(String),

    #[error("conditioning event has probability zero")]
    ZeroProbability,

    #[error("not a sample file: bad magic {found:?}")]
    BadMagic { found: [u8; 4] },

    #[error("unsupported sample file version {0}")]
    UnsupportedVersion(u8),

    #[error("sample file header truncated ({found} of {expected} bytes)")]
    TruncatedHeader { expected: usize, found: usize },

    #[error("sample rows truncated: expected {expected} bytes, found {found}")]
    TruncatedRows { expected: u64, found: u64 },

    #[error("sample file has {0} trailing bytes after the last row")]
    TrailingBytes(u64),

    #[error("row {row} has nonzero padding bits")]
    NonzeroPadding { row: usize },

    #[error("degenerate fit: {points} usable points, need at least {needed}")]
    DegenerateFit { points: usize, needed: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Whether the error stems from user input (bad flags, bad files) rather than
    /// a broken internal invariant.
    pub fn is_config_error(&self) -> bool {
        match self {
            Error::ZeroProbability | Error::Invariant(_) => false,
            Error::Context { source, .. } => source.is_config_error(),
            _ => true,
        }
    }

    pub fn context(self, context: impl Into<String>) -> Error {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }
}
