use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid range: lower end {lo} must be below upper end {hi}")]
    InvalidRange { lo: u64, hi: u64 },
    #[error("segment size {0} bytes is below the minimum of 16384")]
    SegmentTooSmall(usize),
    #[error("upper limit {hi} exceeds the configured maximum {max}")]
    RangeExceeded { hi: u64, max: u64 },
    #[error("{what}: argument {value} is outside the domain")]
    Domain { what: &'static str, value: f64 },
    #[error("evaluation points must be ascending (index {index})")]
    Unsorted { index: usize },
    #[error("accumulators over {left:?} and {right:?} are not adjacent")]
    NotAdjacent { left: (u64, u64), right: (u64, u64) },
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("unknown bound `{0}`")]
    UnknownBound(String),
    #[error("missing constant `{0}`")]
    MissingConstant(String),
    #[error("zero table line {line}: {msg}")]
    ZeroTable { line: usize, msg: String },
    #[error("checkpoint cache: {0}")]
    Cache(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(what: &'static str, value: f64) -> Error {
    Error::Domain { what, value }
}
