use thiserror::Error;

/// Harness-level failures, each mapped to a process exit code.
#[derive(Debug, Error)]
pub enum HarnessError {
    /// Invalid scenario or flags; exit code 2. The message names the field.
    #[error("config error: {0}")]
    Config(String),

    /// A subcode or subspace enumeration exceeded its cap; exit code 3.
    #[error("enumeration too large: {0}")]
    TooLarge(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) => 2,
            HarnessError::TooLarge(_) => 3,
            HarnessError::Io(_) => 2,
        }
    }
}

/// Map a core error raised while acting on user configuration.
pub fn from_core(context: &str, err: latcast_core::Error) -> HarnessError {
    match err {
        latcast_core::Error::EnumerationTooLarge { required, cap } => HarnessError::TooLarge(
            format!("{context}: {required} items exceed the cap of {cap}"),
        ),
        other => HarnessError::Config(format!("{context}: {other}")),
    }
}

pub type Result<T> = std::result::Result<T, HarnessError>;
