use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("n = {n} exceeds the enumeration cap of {cap}")]
    CapExceeded { n: u32, cap: u32 },

    #[error("block length k = {0} is not supported (k must be at least 2)")]
    UnsupportedK(u32),

    #[error("b = {0} is not supported here (b must be at least 2)")]
    UnsupportedB(u32),

    #[error(
        "closed-form expansion for b = {0} enumerates too many subsets (b must be at most 12)"
    )]
    SubsetBlowup(u32),

    #[error("tower is not convex")]
    NotConvex,

    #[error("invalid tower shape: {0}")]
    InvalidShape(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("b-file line {line}: {message}")]
    BFileParse { line: usize, message: String },

    #[error("network access is disabled and no local b-file is available for {0}")]
    NetworkDisabled(String),

    #[error("fetching {url}: {message}")]
    Network { url: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) | Error::Network { .. } | Error::NetworkDisabled(_) => 3,
            Error::BFileParse { .. } => 3,
            _ => 2,
        }
    }
}
