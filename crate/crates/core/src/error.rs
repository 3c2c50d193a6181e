use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for a hypergraph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("edges must be nonempty")]
    EmptyEdge,

    #[error("edge {0:?} repeats a vertex")]
    RepeatedVertex(Vec<usize>),

    #[error("{family} family is not Sperner: {sub:?} is contained in {sup:?}")]
    NotSperner {
        family: &'static str,
        sub: Vec<usize>,
        sup: Vec<usize>,
    },

    #[error("at most {limit} vertices are supported, got {n}")]
    TooManyVertices { n: usize, limit: usize },

    #[error("coloring has {got} entries but the hypergraph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },

    #[error("edge {0:?} not present")]
    EdgeNotFound(Vec<usize>),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("instance too large: n = {n} exceeds the limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("hypergraph is not {r}-uniform: edge {edge:?} has size {}", edge.len())]
    NotUniform { r: usize, edge: Vec<usize> },

    #[error("not a bi-hypergraph: co-edges and edges differ")]
    NotBiHypergraph,

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a partition of the vertex set: {0}")]
    NotPartition(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("incomplete certificate: {0}")]
    IncompleteCertificate(String),

    #[error("contradiction: {0}")]
    Contradiction(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
