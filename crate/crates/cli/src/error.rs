use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}, field `{field}`: {message}")]
    ConfigParse {
        line: usize,
        field: String,
        message: String,
    },

    #[error("unknown figure {0}; expected 1 to 5")]
    UnknownFigure(u32),

    #[error("parameters are not legitimate ({0}); pass --force to emit anyway")]
    Illegitimate(String),

    #[error(transparent)]
    Core(#[from] gpc_core::Error),

    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::ConfigParse {
            line: 0,
            field: field.into(),
            message: message.into(),
        }
    }

    /// Process exit status: 2 for bad input, 3 for illegitimate parameters.
    pub fn exit_code(&self) -> i32 {
        use gpc_core::Error as E;
        match self {
            CliError::ConfigParse { .. } | CliError::UnknownFigure(_) => 2,
            CliError::Illegitimate(_) => 3,
            CliError::Core(
                E::NonPrimeDimension { .. }
                | E::IndexOutOfRange { .. }
                | E::DimensionMismatch { .. }
                | E::InvalidParameters(_)
                | E::InvalidStep(_)
                | E::InvalidGrid(_)
                | E::NegativeTime(_)
                | E::UnsupportedFamily(_)
                | E::AlreadySemigroup,
            ) => 2,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
