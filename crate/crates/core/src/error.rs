use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("singular matrix")]
    Singular,
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different number fields")]
    FieldMismatch,
    #[error("polynomial is not squarefree")]
    NotSquarefree,
    #[error("invalid number field: {0}")]
    InvalidField(String),
    #[error("invalid twist family: {0}")]
    InvalidFamily(String),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("unit is a root of unity")]
    RootOfUnity,
    #[error("scaled characteristic polynomial is not integral: {0}")]
    NonIntegralForm(String),
    /// Certification could not be completed below the precision cap.
    #[error("certification failed at the {bits}-bit cap: {what}")]
    Precision { bits: u32, what: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn precision(bits: u32, what: impl Into<String>) -> Self {
        Error::Precision { bits, what: what.into() }
    }

    /// True for failures that more precision might have fixed.
    pub fn is_certification_failure(&self) -> bool {
        matches!(self, Error::Precision { .. } | Error::Singular)
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
