use crate::face::{Face, Vertex};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("face not in complex: {0}")]
    FaceNotInComplex(Face),

    #[error("vertex {0} is not a vertex of the complex")]
    NotAVertex(Vertex),

    #[error("complex is not pure")]
    NotPure,

    #[error("complex is empty")]
    EmptyComplex,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("({sigma}, {tau}) is not a free pair; cofaces of {sigma}: {cofaces:?}")]
    NotFree {
        sigma: Face,
        tau: Face,
        cofaces: Vec<Face>,
    },

    #[error("invalid certificate: {0}")]
    InvalidCertificate(String),

    #[error("facet list does not match the complex: {0}")]
    WrongFacets(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("{context}: reduced homology of {what} is not trivial (betti {betti:?})")]
    NontrivialHomology {
        context: String,
        what: String,
        betti: Vec<usize>,
    },

    #[error("search budget of {budget} nodes exceeded while {context}")]
    BudgetExceeded { context: String, budget: u64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
