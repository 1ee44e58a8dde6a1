use flexsky_core::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),

    #[error("config: {0}")]
    Config(String),

    #[error("data: {0}")]
    Data(String),

    #[error("internal: {0}")]
    Internal(String),

    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config(_) => 2,
            CliError::Data(_) => 3,
            CliError::Internal(_) => 4,
            CliError::Core(e) => match e {
                CoreError::Io { .. }
                | CoreError::Csv(_)
                | CoreError::HeaderMismatch { .. }
                | CoreError::NonNumeric { .. }
                | CoreError::RaggedRow { .. }
                | CoreError::DuplicateId(_)
                | CoreError::EmptyRelation
                | CoreError::InconsistentUniverse(_)
                | CoreError::InvalidSortedList(_) => 3,
                CoreError::IterationLimit(_) | CoreError::SelfComparison(_) => 4,
                _ => 2,
            },
        }
    }
}

/// Result of writing to the output stream; a closed pipe is not an error.
pub(crate) fn output(r: std::io::Result<()>) -> Result<(), CliError> {
    match r {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Internal(e.to_string())),
        _ => Ok(()),
    }
}
