use thiserror::Error;

use crate::corr::Validity;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("point index {0} out of range")]
    PointIndex(usize),
    #[error("duplicate point `{0}`")]
    DuplicatePoint(String),
    #[error("antisymmetry violation: `{0}` <= `{1}` and `{1}` <= `{0}` in a T0 space")]
    Antisymmetry(String, String),
    #[error("map is not continuous: `{lower}` <= `{upper}` but f(`{lower}`) = `{image_lower}` is not <= f(`{upper}`) = `{image_upper}`")]
    NotContinuous {
        lower: String,
        upper: String,
        image_lower: String,
        image_upper: String,
    },
    #[error("space mismatch: {0}")]
    SpaceMismatch(String),
    #[error("assignment has {got} entries, domain has {expected} points")]
    AssignmentLength { expected: usize, got: usize },
    #[error("invalid correspondence: {0}")]
    InvalidCorr(Validity),
    #[error("constant value set is empty")]
    EmptyValue,
    #[error("cover member {0} is not closed")]
    CoverNotClosed(usize),
    #[error("cover misses point `{0}`")]
    IncompleteCover(String),
    #[error("parts {first} and {second} disagree on their overlap at `{point}`")]
    OverlapDisagreement {
        first: usize,
        second: usize,
        point: String,
    },
    #[error("cover has {cover} members but {parts} parts were given")]
    CoverArity { cover: usize, parts: usize },
    #[error("`{from}` and `{to}` lie in different connected components")]
    Disconnected { from: String, to: String },
    #[error("{what} index {index} out of range (max {max})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },
    #[error("signature mismatch: {0}")]
    SignatureMismatch(String),
    #[error("vertex image {vertex} leaves the codomain: {reason}")]
    OutsideCodomain { vertex: usize, reason: String },
    #[error("vertex images are not affine on the product domain")]
    NotAffine,
    #[error("boundary of a degree-0 chain is undefined")]
    DegreeZero,
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("matrices are not composable: {0}")]
    NotComposable(String),
    #[error("composite of consecutive boundary matrices is nonzero")]
    NonzeroComposite,
    #[error("face of a basis simplex is missing from the lower-degree basis")]
    BasisNotFaceClosed,
    #[error("basis in degree {degree} exceeds the bound of {bound} elements")]
    BoundExceeded { degree: usize, bound: usize },
    #[error("more than {bound} correspondences")]
    TooManyCorrs { bound: usize },
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("space is not discrete")]
    NotDiscrete,
    #[error("constant chain in even degree {0} is not a cycle")]
    EvenDegree(usize),
    #[error("space is empty")]
    EmptySpace,
    #[error("integer overflow during exact arithmetic")]
    Overflow,
    #[error("certificate failed verification")]
    CertificateFailed,
    #[error("malformed input: {0}")]
    Malformed(String),
}
