use thiserror::Error;

use crate::cohomology::RelationViolation;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{op}: dimension mismatch between {}x{} and {}x{}", left.0, left.1, right.0, right.1)]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("{op}: expected a square matrix, got {}x{}", shape.0, shape.1)]
    NotSquare {
        op: &'static str,
        shape: (usize, usize),
    },

    #[error("matrix is singular (rank {rank})")]
    Singular { rank: usize },

    #[error("shape error: {0}")]
    Shape(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("genus {g} is not supported here (need g >= {min})")]
    UnsupportedGenus { g: u32, min: u32 },

    #[error("generator {0} does not exist on this surface")]
    InvalidGenerator(String),

    #[error("cocycle is missing a value for generator {0}")]
    MissingGenerator(String),

    #[error("cocycle violates {} relation(s); first: {}", .0.len(), .0.first().map(ToString::to_string).unwrap_or_default())]
    RelationViolations(Vec<RelationViolation>),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
