use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input must be nonzero")]
    ZeroInput,
    #[error("all coordinates are zero")]
    AllZero,
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("a + b + c != 0")]
    SumNotZero,
    #[error("coordinates are not pairwise coprime")]
    NotCoprime,
    #[error("triple has a zero coordinate")]
    ZeroCoordinate,
    #[error("all coordinates are units; smoothness is undefined")]
    AllUnits,
    #[error("radical must be at least 2, got {0}")]
    BadRadical(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("bad alpha {alpha} for corollary {id}")]
    BadAlpha { id: u8, alpha: f64 },
    #[error("hypothesis of corollary {id} fails: {reason}")]
    HypothesisFails { id: u8, reason: String },
    #[error("corollary {0} is not applicable: its class-group hypothesis is vacuous when h_K = 1")]
    NotApplicable(u8),
    #[error("dataset is empty")]
    EmptyDataset,
    #[error("no finite constant satisfies the inequality: {0}")]
    Unattainable(String),
    #[error("characteristic polynomial has repeated roots")]
    RepeatedRoots,
    #[error("roots are not pairwise coprime")]
    RootsNotCoprime,
    #[error("height of the dominant root is zero")]
    DegenerateHeight,
    #[error("singular Vandermonde system")]
    SingularSystem,
    #[error("unknown growth function id {0}")]
    BadPhi(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("line {line}: {msg}")]
    ConfigParse { line: usize, msg: String },
    #[error("unknown configuration key `{0}`")]
    UnknownKey(String),
    #[error("bad value for `{key}`: {value}")]
    BadValue { key: String, value: String },
    #[error("io error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
