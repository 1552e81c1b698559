use thiserror::Error;

/// Errors raised anywhere in the analysis pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("invalid geometry: {0}")]
    Geometry(String),

    #[error("thin-wire approximation violated: {0}")]
    ThinWire(String),

    #[error("singular impedance matrix at {freq_hz:.6e} Hz (condition estimate {condition:.3e})")]
    SingularMatrix { freq_hz: f64, condition: f64 },

    #[error("solver quality check failed at {freq_hz:.6e} Hz: {reason}")]
    SolverQuality { freq_hz: f64, reason: String },

    #[error("sweep failed at {freq_hz:.6e} Hz: {source}")]
    SweepPoint {
        freq_hz: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("degenerate denominator: {0}")]
    Degenerate(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("config parse error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    /// True for failures originating in the numerical solver rather than in the inputs.
    pub fn is_solver_error(&self) -> bool {
        match self {
            Error::SingularMatrix { .. } | Error::SolverQuality { .. } => true,
            Error::SweepPoint { source, .. } => source.is_solver_error(),
            _ => false,
        }
    }
}

pub(crate) fn ensure_positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::param(name, format!("must be positive and finite, got {value}")))
    }
}
