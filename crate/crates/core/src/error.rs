use thiserror::Error;

pub type Result<T, E = LctError> = std::result::Result<T, E>;

/// Reason a line of ideal input was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("expected a `vars` header line")]
    MissingHeader,
    #[error("`vars` header must name at least one variable")]
    NoVariables,
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("unexpected {found}, expected {expected}")]
    Unexpected {
        found: String,
        expected: &'static str,
    },
    #[error("a generator has at most two terms")]
    TooManyTerms,
    #[error("negative exponent")]
    NegativeExponent,
    #[error("zero coefficient")]
    ZeroCoefficient,
    #[error("zero generator")]
    ZeroGenerator,
    #[error("ideal has no generators")]
    Empty,
}

#[derive(Debug, Error)]
pub enum LctError {
    #[error("line {line}, column {column}: {kind}")]
    Parse {
        line: usize,
        column: usize,
        kind: ParseErrorKind,
    },
    #[error("zero vector has no primitive representative")]
    ZeroVector,
    #[error("zero generator")]
    ZeroGenerator,
    #[error("negative entry in {0}")]
    NegativeEntry(&'static str),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("empty vector")]
    EmptyVector,
    #[error("ideal has no generators")]
    EmptyIdeal,
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("vertices {0} and {1} do not span a 2-dimensional cone of the fan")]
    NotAFace(usize, usize),
    #[error("invalid permutation of generator indices")]
    InvalidPermutation,
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("independent computations disagree: {0}")]
    OracleMismatch(String),
    #[error("invalid value: {0}")]
    InvalidValue(String),
}
