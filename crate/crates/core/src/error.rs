use thiserror::Error;

use crate::simplicial::VertexSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a face: {0}")]
    NotAFace(VertexSet),

    #[error("flag criterion requires flag complex")]
    NotFlag,

    #[error("requires subdivided model")]
    RequiresSubdivided,

    #[error("fixed-point model disagreement for I = {subset}: link model {link:?}, subdivided model {cubical:?}")]
    FixedPointDisagreement {
        subset: VertexSet,
        link: Vec<usize>,
        cubical: Vec<usize>,
    },

    #[error("vertex {0} is not a face; every generator must be a vertex of the complex")]
    GhostVertex(u32),

    #[error("vertex {vertex} outside the ambient vertex set {ambient}")]
    VertexOutOfRange { vertex: u32, ambient: VertexSet },

    #[error("ambient size mismatch: expected {expected}, found {found}")]
    AmbientMismatch { expected: usize, found: usize },

    #[error("{what} supports at most {cap} vertices, got {m}")]
    TooManyVertices { what: &'static str, m: usize, cap: usize },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by malformed or out-of-contract input, as opposed to
    /// internal consistency failures.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::FixedPointDisagreement { .. })
    }
}
