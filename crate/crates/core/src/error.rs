use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument `{name}`: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    #[error("excited count {excited} out of range for {states} states ({reason})")]
    OccupationOutOfRange {
        states: u64,
        excited: u64,
        reason: &'static str,
    },

    /// Half filling, where `ln((L - n) / n) = 0`.
    #[error("infinite temperature at half filling (L = {states}, n = {excited})")]
    InfiniteTemperature { states: u64, excited: u64 },

    /// Fully empty or fully excited gas, the `T -> 0` limit.
    #[error("zero temperature (L = {states}, n = {excited})")]
    ZeroTemperature { states: u64, excited: u64 },

    #[error("empty bitstream")]
    EmptyStream,

    #[error("stream of {len} bits is too short: {needed} required")]
    StreamTooShort { len: usize, needed: usize },

    #[error("operation requires SI units")]
    RequiresSi,

    #[error("empty file: {0}")]
    EmptyFile(PathBuf),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidArgument {
            name,
            reason: reason.into(),
        }
    }
}

/// Rejects NaN, infinities and values `<= 0`.
pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::invalid(
            name,
            format!("must be finite and > 0, got {value}"),
        ))
    }
}

pub(crate) fn require_non_negative(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::invalid(
            name,
            format!("must be finite and >= 0, got {value}"),
        ))
    }
}
