use std::fmt;

use qap_core::CoreError;

use crate::catalog::{ESCAPE_PROBABILITY_ALIAS, FEATURE_NAMES};

/// Errors raised while parsing or serializing instance files, CSV tables,
/// and configuration files.
#[derive(Debug)]
pub enum IoError {
    /// The instance stream ended before the declared matrix data was read.
    TokenCount { expected: usize, found: usize },
    /// A token that should have been a number was not (1-based stream position).
    NonNumericToken { position: usize, token: String },
    /// The leading size token is numeric but not a positive integer.
    InvalidSize { token: String },
    /// The declared instance size is below the minimum of 2.
    InstanceTooSmall { n: usize },
    /// An entry cannot be serialized because it is NaN or infinite.
    NonFiniteEntry { matrix: &'static str, row: usize, col: usize },
    /// Integer serialization was requested but an entry has a fractional part.
    NonIntegralEntry { matrix: &'static str, row: usize, col: usize, value: f64 },
    /// A CSV header lacks a required column.
    MissingColumn { column: String },
    /// A CSV header carries a column that is not part of the schema.
    UnknownColumn { column: String },
    /// A CSV cell could not be parsed as the expected type.
    BadCell { line: usize, column: String, value: String },
    /// A CSV record is well-formed but violates a field invariant.
    InvalidRecord { line: usize, reason: String },
    /// A record constructed in memory violates a field invariant.
    Invalid { reason: String },
    /// A configuration file is malformed (1-based line number; 0 when the
    /// problem is a whole-file property such as mismatched section sizes).
    Config { line: usize, reason: String },
    /// A configuration file names a feature outside the canonical catalog.
    UnknownFeature { name: String },
    /// An underlying filesystem operation failed.
    Io(std::io::Error),
    /// The CSV layer rejected the input (ragged rows, bad quoting, ...).
    Csv(csv::Error),
    /// Parsed matrix data failed instance validation.
    Core(CoreError),
}

impl fmt::Display for IoError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IoError::TokenCount { expected, found } => {
                write!(f, "expected {expected} tokens, found {found}")
            }
            IoError::NonNumericToken { position, token } => {
                write!(f, "token {position} is not a number: {token:?}")
            }
            IoError::InvalidSize { token } => {
                write!(f, "first token must be a positive integer size, got {token:?}")
            }
            IoError::InstanceTooSmall { n } => {
                write!(f, "instance size must be at least 2, got {n}")
            }
            IoError::NonFiniteEntry { matrix, row, col } => {
                write!(f, "cannot serialize matrix {matrix}: non-finite entry at ({row},{col})")
            }
            IoError::NonIntegralEntry { matrix, row, col, value } => {
                write!(
                    f,
                    "integer format requested but matrix {matrix} has fractional entry \
                     {value} at ({row},{col})"
                )
            }
            IoError::MissingColumn { column } => {
                write!(f, "missing column {column:?}")
            }
            IoError::UnknownColumn { column } => {
                write!(f, "unknown column {column:?}")
            }
            IoError::BadCell { line, column, value } => {
                write!(f, "line {line}, column {column:?}: cannot parse {value:?} as a number")
            }
            IoError::InvalidRecord { line, reason } => {
                write!(f, "line {line}: {reason}")
            }
            IoError::Invalid { reason } => {
                write!(f, "invalid record: {reason}")
            }
            IoError::Config { line: 0, reason } => {
                write!(f, "config error: {reason}")
            }
            IoError::Config { line, reason } => {
                write!(f, "config line {line}: {reason}")
            }
            IoError::UnknownFeature { name } => {
                write!(
                    f,
                    "unknown feature name {name:?}; valid names are: {} (alias {:?} is \
                     also accepted)",
                    FEATURE_NAMES.join(", "),
                    ESCAPE_PROBABILITY_ALIAS,
                )
            }
            IoError::Io(err) => write!(f, "{err}"),
            IoError::Csv(err) => write!(f, "{err}"),
            IoError::Core(err) => write!(f, "{err}"),
        }
    }
}

impl std::error::Error for IoError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            IoError::Io(err) => Some(err),
            IoError::Csv(err) => Some(err),
            IoError::Core(err) => Some(err),
            _ => None,
        }
    }
}

impl From<std::io::Error> for IoError {
    fn from(err: std::io::Error) -> Self {
        IoError::Io(err)
    }
}

impl From<csv::Error> for IoError {
    fn from(err: csv::Error) -> Self {
        IoError::Csv(err)
    }
}

impl From<CoreError> for IoError {
    fn from(err: CoreError) -> Self {
        IoError::Core(err)
    }
}
