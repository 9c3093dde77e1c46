use std::path::PathBuf;

/// Unified error type for the whole crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("sample rate mismatch: {left} Hz vs {right} Hz")]
    RateMismatch { left: u32, right: u32 },

    #[error("degenerate impulse response: all samples are zero")]
    DegenerateRir,

    #[error("invalid RT60 {0} s: must be in (0, 2.0]")]
    InvalidRt60(f64),

    #[error("insufficient decay: {0}")]
    InsufficientDecay(String),

    #[error("RIR band exhausted: {0}")]
    BandExhausted(String),

    #[error("input too short: {got} samples, need at least {min}")]
    InputTooShort { got: usize, min: usize },

    #[error("shape mismatch: {0}")]
    ShapeError(String),

    #[error("invalid quantizer stage count {requested}: model has {available}")]
    InvalidStageCount { requested: usize, available: usize },

    #[error("token index {index} out of range for codebook of size {size}")]
    InvalidToken { index: usize, size: usize },

    #[error("degenerate reference signal (all zeros)")]
    DegenerateReference,

    #[error("degenerate variance: {0}")]
    DegenerateVariance(String),

    #[error("insufficient samples: {0}")]
    InsufficientSamples(String),

    #[error("numerical divergence at step {step}: {detail}")]
    NumericalDivergence { step: u64, detail: String },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("checkpoint format error: {0}")]
    CheckpointFormat(String),

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
