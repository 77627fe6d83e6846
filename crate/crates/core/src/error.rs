use thiserror::Error;

/// Errors raised by the solver stack.
///
/// Each variant maps onto one process exit code of the command-line front end
/// (see [`Error::exit_code`]).
#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The particle shape or the scene geometry is inconsistent.
    #[error("geometry error: {0}")]
    Geometry(String),

    /// A linear system or projection is too badly conditioned to trust.
    #[error("conditioning error: {0}")]
    Conditioning(String),

    /// A requested truncation cannot hold the result to the required accuracy.
    #[error("truncation error: {0}")]
    Truncation(String),

    /// Operands of incompatible size or kind.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// Time integration produced or received non-finite values.
    #[error("integration error: {0}")]
    Integration(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Exit code convention: 1 usage/config, 2 domain or geometry, 3 numerical.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_) => 1,
            Error::Domain(_) | Error::Geometry(_) | Error::Dimension(_) | Error::Io(_) => 2,
            Error::Conditioning(_) | Error::Truncation(_) | Error::Integration(_) => 3,
        }
    }

    /// Prefixes the message with `context`, keeping the variant.
    pub fn context(self, context: impl std::fmt::Display) -> Self {
        match self {
            Error::Domain(m) => Error::Domain(format!("{context}: {m}")),
            Error::Geometry(m) => Error::Geometry(format!("{context}: {m}")),
            Error::Conditioning(m) => Error::Conditioning(format!("{context}: {m}")),
            Error::Truncation(m) => Error::Truncation(format!("{context}: {m}")),
            Error::Dimension(m) => Error::Dimension(format!("{context}: {m}")),
            Error::Integration(m) => Error::Integration(format!("{context}: {m}")),
            Error::Config(m) => Error::Config(format!("{context}: {m}")),
            Error::Io(e) => Error::Io(std::io::Error::new(e.kind(), format!("{context}: {e}"))),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
