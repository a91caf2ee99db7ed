use thiserror::Error;

use crate::series::SeriesError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("invalid class parameters: {0}")]
    InvalidParams(String),
    #[error("invalid Schwarz function: {0}")]
    InvalidSchwarz(String),
    #[error("value not representable in the {backend} backend: {what}")]
    NotRepresentable {
        backend: crate::scalar::Backend,
        what: String,
    },
    #[error("invalid index: {0}")]
    InvalidIndex(String),
    #[error("invalid exponent: {0}")]
    InvalidLambda(String),
    #[error("series of order {available} is too short, need order {needed}")]
    TruncationTooShort { needed: usize, available: usize },
    #[error("t + n = 0 (t = {t}, n = {n}) is the pole of the inverse-power relation")]
    PoleIndex { t: i64, n: usize },
    #[error("invalid campaign configuration: {0}")]
    InvalidConfig(String),
}
