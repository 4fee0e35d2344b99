use thiserror::Error;

/// Input and precondition errors. Failed mathematical checks are not
/// errors; they come back as [`crate::report::Report`]s with a witness.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed scalar {text:?}: {reason}")]
    Scalar { text: String, reason: String },

    #[error("dimension mismatch in {what}: expected {expected}, got {got}")]
    Dimension {
        what: String,
        expected: usize,
        got: usize,
    },

    #[error("bicharacter entry q[{i}][{j}] is zero")]
    ZeroEntry { i: usize, j: usize },

    #[error("invalid degree {coords:?}: {reason}")]
    Degree { coords: Vec<i64>, reason: String },

    #[error("index {index} out of range for dimension {dim}")]
    Index { index: usize, dim: usize },

    #[error("conflicting entries at {tuple:?}: {first:?} vs {second:?}")]
    Conflict {
        tuple: Vec<usize>,
        first: Vec<String>,
        second: Vec<String>,
    },

    #[error("grading violated at {tuple:?}: output index {output} has the wrong degree")]
    Grading { tuple: Vec<usize>, output: usize },

    #[error("skew symmetry violated at {tuple:?}")]
    Skew { tuple: Vec<usize> },

    #[error("duplicate basis name {0:?}")]
    DuplicateName(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("no twist-compatible section exists")]
    NoSection,

    #[error("inconsistent extension: {0}")]
    InconsistentExtension(String),
}

pub type Result<T> = std::result::Result<T, Error>;
