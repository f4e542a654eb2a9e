use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not gentle: {0}")]
    NotGentle(String),
    #[error("relation ({0}, {1}) is not a composable path")]
    NonComposableRelation(String, String),
    #[error("unknown arrow {0}")]
    UnknownArrow(String),
    #[error("inconsistent sign maps at arrow {0}")]
    InconsistentSigns(String),
    #[error("unclassifiable block: {0}")]
    UnclassifiableBlock(String),
    #[error("infinite-dimensional algebra: {0}")]
    InfiniteDimensional(String),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid string: {0}")]
    InvalidString(String),
    #[error("invalid band: {0}")]
    InvalidBand(String),
    #[error("band is not primitive")]
    NotPrimitive,
    #[error("band parameter must be nonzero")]
    ZeroLambda,
    #[error("quasi-length {0} is not supported")]
    UnsupportedQuasiLength(u32),
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("no summand found within the dictionary bound {0}")]
    DictionaryExhausted(usize),
    #[error("E-invariant formulas disagree: {0} vs {1}")]
    FormulaMismatch(i64, i64),
    #[error("algebra is not gentle Jacobian")]
    NotJacobian,
    #[error("sampling failed: {0}")]
    SamplingFailure(String),
    #[error("consistency failure: {0}")]
    ConsistencyFailure(String),
    #[error("two tau-reduced components for d = {0:?}")]
    UniquenessViolation(Vec<usize>),
    #[error("invalid triangulation: {0}")]
    InvalidTriangulation(String),
    #[error("curve is not locally minimal: {0}")]
    NotLocallyMinimal(String),
    #[error("inconsistent crossing sequence: {0}")]
    InconsistentSequence(String),
    #[error("curve is not an open curve")]
    NotOpenCurve,
    #[error("invalid lamination: {0}")]
    InvalidLamination(String),
    #[error("unsupported module: {0}")]
    UnsupportedModule(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
