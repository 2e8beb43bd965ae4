use thiserror::Error;

/// Errors raised by the occupancy library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("dimension mismatch: expected {expected} colors, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid probability vector: {0}")]
    InvalidProbabilities(String),

    #[error("color index {index} out of range for {colors} colors")]
    IndexOutOfRange { index: usize, colors: usize },

    #[error("cannot draw {draws} particles from a universe of {universe}")]
    DrawsExceedUniverse { draws: u64, universe: u64 },

    #[error("{what}: {count} exceeds cap {cap}; use Monte Carlo mode or raise --cap")]
    CapExceeded { what: &'static str, count: u128, cap: u128 },

    #[error("spectrum truncation failed: {0}")]
    Truncation(String),

    #[error("ill-ordered scenario: {0}")]
    Scenario(String),

    #[error("invalid input: {0}")]
    Input(String),
}

impl Error {
    /// True for errors caused by size limits rather than malformed input.
    pub fn is_resource_error(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. } | Error::Truncation(_) | Error::DrawsExceedUniverse { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
