use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("variable index {index} out of range for {nvars} variables")]
    IndexOutOfRange { index: usize, nvars: usize },

    #[error("division by zero")]
    DivisionByZero,

    /// A denominator factor that is not a product of arrangement factors.
    /// The witness is the leftover cofactor, rendered as text.
    #[error("unsupported denominator factor: {witness}")]
    UnsupportedDenominator { witness: String },

    #[error("degree overflow: total degree {0} exceeds the packed monomial limit")]
    DegreeOverflow(u32),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown system `{0}`")]
    UnknownSystem(String),

    #[error("unsupported system: {0}")]
    UnsupportedSystem(String),

    /// A built-in catalog entry failed one of its own consistency assertions.
    #[error("catalog integrity error in {system}: {detail}")]
    CatalogIntegrity { system: String, detail: String },

    /// A computed object contradicts a proven identity; always an implementation bug.
    #[error("theorem violation ({what}): {witness}")]
    TheoremViolation { what: String, witness: String },

    #[error("limit exceeded: {0}")]
    LimitExceeded(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
