use thiserror::Error;

use crate::scalar::ScalarKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime modulus")]
    NotPrime(u64),

    #[error("scalar kind mismatch: expected {expected}, found {found}")]
    ScalarKind { expected: ScalarKind, found: ScalarKind },

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("degree {degree} outside window [{lo}, {hi}]")]
    DegreeOutsideWindow { degree: i32, lo: i32, hi: i32 },

    #[error("validation failed: {0}")]
    Validation(String),

    #[error("not exact: {0}")]
    NotExact(String),

    #[error("resource cap exceeded: {what} needs dimension {dim} (cap {cap})")]
    ResourceCap { what: String, dim: usize, cap: usize },

    #[error("unknown object '{0}'")]
    UnknownObject(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}: {source}")]
    File {
        path: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn in_file(self, path: impl Into<String>) -> Error {
        Error::File { path: path.into(), source: Box::new(self) }
    }

    /// The innermost error, looking through file-location wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::File { source, .. } => source.root(),
            e => e,
        }
    }
}

pub(crate) fn check_kind(expected: ScalarKind, found: ScalarKind) -> Result<()> {
    if expected != found {
        return Err(Error::ScalarKind { expected, found });
    }
    Ok(())
}
