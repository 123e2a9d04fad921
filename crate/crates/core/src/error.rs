use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("dimension mismatch: expected {expected} values, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported embedding dimension {0} (maximum is {max})", max = crate::ordinal::MAX_DIMENSION)]
    UnsupportedDimension(usize),

    #[error("insufficient data{}: need at least {needed} values, have {available}", label_suffix(.label))]
    InsufficientData {
        label: Option<String>,
        needed: usize,
        available: usize,
    },

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("invalid alphabet size {0}: at least 2 states are required")]
    InvalidAlphabet(usize),

    #[error("parse error at line {line}: {message}")]
    Parse { line: u64, message: String },

    #[error("duplicate date {date} in series '{label}'")]
    DuplicateDate { label: String, date: String },

    #[error("series '{0}' starts with a missing value and cannot be forward-filled")]
    MissingLeadingValue(String),

    #[error("duplicate series label '{0}'")]
    DuplicateLabel(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn label_suffix(label: &Option<String>) -> String {
    match label {
        Some(l) => format!(" in series '{l}'"),
        None => String::new(),
    }
}

impl Error {
    pub(crate) fn insufficient(needed: usize, available: usize) -> Self {
        Error::InsufficientData {
            label: None,
            needed,
            available,
        }
    }

    /// Attaches a series label to insufficient-data errors that lack one.
    pub fn for_series(self, name: &str) -> Self {
        match self {
            Error::InsufficientData {
                label: None,
                needed,
                available,
            } => Error::InsufficientData {
                label: Some(name.to_string()),
                needed,
                available,
            },
            other => other,
        }
    }
}
