use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("undeclared symbol: {0}")]
    UndeclaredSymbol(String),
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("degree {degree} exceeds half dimension {half}")]
    DegreeTooHigh { degree: usize, half: usize },
    #[error("operation requires a form of pure degree")]
    MixedDegree,
    #[error("expected a form of degree {expected}, found degree {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("form is not primitive")]
    NotPrimitive,
    #[error("unknown builtin model `{0}`")]
    UnknownBuiltin(String),
    #[error("model `{0}` has function coefficients; only pointwise verification is available")]
    FunctionCoefficientModel(String),
    #[error("subspaces live in different ambient spaces")]
    AmbientMismatch,
    #[error("kernel of P_J does not split as predicted: {0}")]
    SplitFailure(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("duplicate declaration: {0}")]
    DuplicateDeclaration(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("dimension {dim} exceeds the limit {limit}")]
    DimensionTooLarge { dim: usize, limit: usize },
    #[error("singular matrix")]
    Singular,
    #[error("{0}")]
    Invalid(String),
}

impl Error {
    pub fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, column, message: message.into() }
    }

    /// True for failures that signal a violated mathematical invariant.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, Error::SplitFailure(_) | Error::InvariantViolation(_))
    }
}
