use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Everything that can go wrong while building or checking groups and decompositions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a bijection: {0}")]
    NotABijection(String),

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("a permutation group needs at least one generator")]
    NoGenerators,

    #[error("closure exceeded the element cap of {cap} ({partial} elements found so far)")]
    CapExceeded { cap: usize, partial: usize },

    #[error("point {point} is out of range for degree {degree}")]
    PointOutOfRange { point: usize, degree: usize },

    #[error("not a partition: {0}")]
    NotAPartition(String),

    #[error("ground set mismatch: expected {expected} points, found {found}")]
    GroundMismatch { expected: usize, found: usize },

    #[error("not a Cartesian decomposition")]
    NotACartesianDecomposition,

    #[error("chosen blocks have an empty intersection")]
    EmptyIntersection,

    #[error("chosen blocks intersect in {0} points")]
    NonSingletonIntersection(usize),

    #[error("bad dimensions: {0}")]
    BadDimensions(String),

    #[error("wreath context mismatch: {0}")]
    ContextMismatch(String),

    #[error("index {index} out of range (length {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("Cartesian decomposition is not homogeneous")]
    NotHomogeneous,

    #[error("generator {generator} does not preserve the Cartesian decomposition")]
    NotPreserved { generator: usize },

    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },

    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),

    #[error("Cayley table is not a Latin square: {0}")]
    NotLatin(String),

    #[error("Cayley table is not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },

    #[error("element 0 is not the identity of the table")]
    IdentityNotZero,

    #[error("group order {order} exceeds the automorphism search bound {bound}")]
    OrderTooLarge { order: usize, bound: usize },

    #[error("degree {degree} exceeds the degree budget {budget}")]
    DegreeBudgetExceeded { degree: usize, budget: usize },

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }

    /// True for the errors that mean "input was fine, but too big to enumerate".
    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            Error::CapExceeded { .. } | Error::DegreeBudgetExceeded { .. } | Error::OrderTooLarge { .. }
        )
    }
}
