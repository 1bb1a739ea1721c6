use std::fmt;

/// Errors from performance aggregation and campaign plumbing.
#[derive(Debug)]
pub enum SolveError {
    /// Run data unfit for aggregation (empty algorithm set, no runs, …).
    Data { reason: String },
}

impl fmt::Display for SolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveError::Data { reason } => write!(f, "invalid run data: {reason}"),
        }
    }
}

impl std::error::Error for SolveError {}
