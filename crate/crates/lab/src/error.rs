use thiserror::Error;

/// Result alias for the harness.
pub type Result<T, E = LabError> = std::result::Result<T, E>;

/// Everything that can go wrong outside the core algorithms.
#[derive(Debug, Error)]
pub enum LabError {
    /// Bad experiment spec, grid, or command-line input; nothing was run.
    #[error("configuration error: {0}")]
    Config(String),
    /// Rejected by the core library.
    #[error(transparent)]
    Core(#[from] sortlab_core::Error),
    /// Filesystem trouble.
    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
    /// Malformed or unwritable JSON.
    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
    /// CSV writer failure.
    #[error("CSV error: {0}")]
    Csv(#[from] csv::Error),
}

impl LabError {
    /// Configuration problems and rejected inputs exit with 2, the rest with 1.
    pub fn exit_code(&self) -> u8 {
        use sortlab_core::Error as E;
        match self {
            LabError::Config(_) | LabError::Json(_) => 2,
            LabError::Core(E::InvalidArgument(_) | E::InvalidPermutation(_) | E::InvalidSequence(_)) => 2,
            _ => 1,
        }
    }
}

pub(crate) fn config(msg: impl Into<String>) -> LabError {
    LabError::Config(msg.into())
}
