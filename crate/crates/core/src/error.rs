use thiserror::Error;

/// Errors raised anywhere in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown identifier `{name}` at offset {pos}")]
    UnknownIdentifier { name: String, pos: usize },

    #[error("unknown coordinate `{0}`")]
    UnknownCoordinate(String),

    #[error("invalid chart: {0}")]
    InvalidChart(String),

    #[error("division by zero")]
    DivisionByZero,

    #[error("pole: denominator vanishes at the evaluation point")]
    Pole,

    #[error("missing value for coordinate `{0}`")]
    MissingCoordinate(String),

    #[error("chart mismatch")]
    ChartMismatch,

    #[error("grade mismatch: {0}")]
    GradeMismatch(String),

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("dimension {0} is even; contact forms need an odd-dimensional chart")]
    EvenDimension(usize),

    #[error("not a contact form: θ∧(dθ)^n vanishes identically")]
    NotContact,

    #[error("singular linear system (degenerate locus of the contact form)")]
    SingularSystem,

    #[error("not a Jacobi pair: [Λ,R] or [Λ,Λ] - 2R∧Λ is nonzero")]
    NotJacobi,

    #[error("coordinate `{0}` already exists on the chart")]
    NameCollision(String),
}

pub type Result<T> = std::result::Result<T, Error>;
