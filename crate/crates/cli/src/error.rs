use thiserror::Error;

/// Process exit codes.
pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Mismatch(String),
    #[error("internal invariant failure: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Mismatch(_) => EXIT_MISMATCH,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }

    pub fn input(context: &str, err: impl std::fmt::Display) -> CliError {
        CliError::Input(format!("{context}: {err}"))
    }
}

impl From<liespray::geom::GeomError> for CliError {
    fn from(e: liespray::geom::GeomError) -> Self {
        use liespray::geom::GeomError;
        match e {
            GeomError::Internal(m) => CliError::Internal(m),
            other => CliError::Input(other.to_string()),
        }
    }
}
