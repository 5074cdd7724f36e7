use thiserror::Error;

/// Errors raised anywhere in the semantics pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("zero-dimensional object")]
    ZeroDimension,
    #[error("not a probability vector: {0}")]
    NotProbability(String),
    #[error("index {index} out of range for size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("credal sets need at least one generator")]
    EmptyGenerators,
    #[error("name clash on `{0}`")]
    NameClash(String),
    #[error("grade mismatch: {0}")]
    GradeMismatch(String),
    #[error("not surjective: {0}")]
    NotSurjective(String),
    #[error("images differ")]
    ImagesDiffer,
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("type error: {0}")]
    Type(String),
    #[error("unbound variable `{0}`")]
    Unbound(String),
    #[error("side condition violated: {0}")]
    SideCondition(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}

impl Error {
    /// Stable machine-readable tag, used in structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Dimension(_) => "dimension",
            Error::ZeroDimension => "zero_dimension",
            Error::NotProbability(_) => "not_probability",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::EmptyGenerators => "empty_generators",
            Error::NameClash(_) => "name_clash",
            Error::GradeMismatch(_) => "grade_mismatch",
            Error::NotSurjective(_) => "not_surjective",
            Error::ImagesDiffer => "images_differ",
            Error::InvariantViolation(_) => "invariant_violation",
            Error::Parse { .. } => "parse",
            Error::Type(_) => "type",
            Error::Unbound(_) => "unbound",
            Error::SideCondition(_) => "side_condition",
            Error::Malformed(_) => "malformed",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
