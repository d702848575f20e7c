use thiserror::Error;

use crate::field::Mat;
use crate::trop::TropVal;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}: empty input")]
    EmptyInput(&'static str),
    #[error("every coordinate is infinite")]
    AllInfinite,
    #[error("projection onto coordinates {0:?} leaves only infinite coordinates")]
    ForbiddenProjection(Vec<usize>),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("entries do not belong to the field {0}")]
    FieldMismatch(String),
    #[error("matrix is singular")]
    Singular,
    #[error("zero columns at positions {0:?}")]
    ZeroColumns(Vec<usize>),
    #[error("matrix has rank {found}, expected {expected}")]
    RankDeficient { expected: usize, found: usize },
    #[error("basis table has no finite entry")]
    NoFiniteEntry,
    #[error("invalid valuated matroid: {0}")]
    InvalidMatroid(String),
    #[error("matroid has loops {0:?}")]
    Loops(Vec<usize>),
    #[error("subset {0:?} contains no basis")]
    NoBasisInSubset(Vec<usize>),
    #[error("{0:?} is not a basis")]
    NotABasis(Vec<usize>),
    #[error("point is not in the tropical linear space; violated circuit {tau:?}")]
    NotMember { tau: Vec<usize> },
    #[error("no basis chart closes the round trip at this point")]
    NoSection,
    #[error("point has an infinite coordinate")]
    InfiniteCoordinate,
    #[error("operation requires {required} field, got {found}")]
    WrongField { required: &'static str, found: String },
    #[error("invalid flag: {0}")]
    InvalidFlag(String),
    #[error("coordinate {0} is not an integer")]
    NonIntegral(TropVal),
    #[error("seminorm has a kernel; a norm is required")]
    ProperSeminorm,
    #[error("oracle is inconsistent at query {query}: {first_value} from {first:?} vs {second_value} from {second:?}")]
    OracleInconsistent {
        query: usize,
        first: Box<Mat>,
        first_value: TropVal,
        second: Box<Mat>,
        second_value: TropVal,
    },
    #[error("oracle has no entry for embedding {0}")]
    OracleIncomplete(String),
    #[error("oracle returned a point of length {found} for {expected} covectors")]
    OracleLength { expected: usize, found: usize },
    #[error("no finite reference coordinate: {0}")]
    NoReference(String),
    #[error("point is not on the hyperplane: coordinates sum to {found}, expected {expected}")]
    OffHyperplane { expected: TropVal, found: TropVal },
    #[error("limit exceeded: {0}")]
    Limit(String),
}
