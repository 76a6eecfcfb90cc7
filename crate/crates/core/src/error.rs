use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// The incidence data violates a structural requirement; the message names the index.
    #[error("invalid incidence matrix: {0}")]
    InvalidMatrix(String),

    #[error("not a polytope lattice: {0}")]
    NotPolytopal(String),

    #[error("size limit exceeded: {0}")]
    Limit(String),

    #[error("face index {0} out of range")]
    FaceIndex(usize),

    #[error("{0}")]
    Undefined(String),

    #[error("construction failed in `{expr}`: {reason}")]
    Construction { expr: String, reason: String },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A cross-check between independent decision paths disagreed. Never expected on valid input.
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn construction(expr: impl Into<String>, reason: impl ToString) -> Self {
        Error::Construction {
            expr: expr.into(),
            reason: reason.to_string(),
        }
    }
}
