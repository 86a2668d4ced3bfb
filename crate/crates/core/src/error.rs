use thiserror::Error;

/// Errors produced by the library.
///
/// Variants split into two families: format errors (bad PGM bytes) and
/// parameter errors (values that violate an operation's preconditions).
/// [`Error::is_format`] tells them apart.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("not a binary PGM stream (expected magic \"P5\", found {0:?})")]
    MagicMismatch(String),
    #[error("unsupported maxval {0}, only 255 is accepted")]
    MaxvalUnsupported(u32),
    #[error("truncated pixel payload: expected {expected} bytes, found {found}")]
    TruncatedPayload { expected: usize, found: usize },
    #[error("malformed PGM header: {0}")]
    MalformedHeader(String),

    #[error("invalid image: {0}")]
    InvalidImage(String),
    #[error("window of size {size} needs a margin of {needed}, view only has {margin}")]
    WindowExceedsPadding { size: usize, needed: usize, margin: usize },
    #[error("density {0} is outside [0, 1]")]
    DensityOutOfRange(f64),
    #[error("invalid noise parameter: {0}")]
    BadNoiseParams(String),
    #[error("kernel/window size {0} must be odd and at least 1")]
    BadKernelSize(usize),
    #[error("invalid kernel: {0}")]
    BadKernel(String),
    #[error("sigma {0} must be a positive finite number")]
    BadSigma(f64),
    #[error("maximum window size {0} must be odd and at least 3")]
    BadSmax(usize),
    #[error("noise variance {0} must be non-negative")]
    NegativeNoiseVariance(f64),
    #[error("image dimensions differ: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("mse {0} must be non-negative")]
    NegativeMse(f64),
    #[error("bad filter spec {spec:?}: offending token {token:?}")]
    FilterSpecSyntax { spec: String, token: String },
    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),
    #[error("cell {noise}/{density}/{filter} failed: {source}")]
    Cell {
        noise: String,
        density: f64,
        filter: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    /// True for errors caused by malformed PGM input.
    pub fn is_format(&self) -> bool {
        match self {
            Error::MagicMismatch(_)
            | Error::MaxvalUnsupported(_)
            | Error::TruncatedPayload { .. }
            | Error::MalformedHeader(_) => true,
            Error::Cell { source, .. } => source.is_format(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
