use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("simplex {0:?} repeats a vertex")]
    DuplicateVertex(Vec<usize>),

    #[error("simplex {0:?} is not in the complex")]
    UnknownSimplex(Vec<usize>),

    #[error("not a subcomplex: {0}")]
    NotSubcomplex(String),

    #[error("invalid construction: {0}")]
    InvalidConstruction(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("boundary of boundary is nonzero in degree {0}")]
    NotAComplex(usize),

    #[error("submodule is not boundary-stable in degree {0}")]
    NotBoundaryStable(usize),

    #[error("nesting violated: {0}")]
    Nesting(String),

    #[error("invalid perversity: {reason} (at k = {k})")]
    Perversity { k: usize, reason: String },

    #[error("invalid filtration: {0}")]
    Filtration(String),

    #[error("map is not stratum-preserving: {0}")]
    NotStratumPreserving(String),

    #[error("map is not a chain map in degree {0}")]
    NotChainMap(usize),

    #[error("image chain is not allowable in degree {0}")]
    NotAllowable(usize),

    #[error("local system is not flat at 2-simplex {0:?}")]
    NotFlat(Vec<usize>),

    #[error("invalid local system: {0}")]
    LocalSystem(String),

    #[error("matrix is not invertible: {0}")]
    NotInvertible(String),

    #[error("operation requires a field, got {0}")]
    NotAField(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown corpus entry `{0}`")]
    UnknownCorpus(String),

    #[error("{0}")]
    Other(String),
}
