use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("{}{field}: {message}", at_line(*line))]
    Validation {
        field: &'static str,
        line: Option<usize>,
        message: String,
    },

    #[error("{}{field}: {message}", at_line(*line))]
    Domain {
        field: &'static str,
        line: Option<usize>,
        message: String,
    },

    #[error(transparent)]
    Model(#[from] gravent_core::Error),

    #[error("table: {0}")]
    Table(String),

    #[error("unknown figure `{0}` (expected fig2, fig3a, fig3b, fig5a or fig5b)")]
    UnknownFigure(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

fn at_line(line: Option<usize>) -> String {
    match line {
        Some(l) => format!("config line {l}: "),
        None => String::new(),
    }
}

impl CliError {
    /// 2 for configuration problems, 3 for physics/geometry, 4 for I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Validation { .. } | CliError::UnknownFigure(_) => 2,
            CliError::Domain { .. } | CliError::Model(_) | CliError::Table(_) => 3,
            CliError::Io { .. } => 4,
        }
    }
}
