use thiserror::Error;

/// Errors raised by the simulator.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate geometry: {0}")]
    DegenerateGeometry(String),

    #[error("frequency {freq_hz} Hz outside calibrated band [{lo_hz}, {hi_hz}] Hz")]
    OutOfBand { freq_hz: f64, lo_hz: f64, hi_hz: f64 },

    #[error("beat frequency {beat_hz} Hz aliases at sample rate {fs_hz} Hz")]
    Aliasing { beat_hz: f64, fs_hz: f64 },

    #[error("degenerate measurement: {0}")]
    DegenerateMeasurement(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("line {line}: {msg}")]
    Parse { line: u64, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by malformed input rather than numerics.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::InvalidParameter(_)
                | Error::DimensionMismatch { .. }
                | Error::Parse { .. }
                | Error::Io(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
