use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not 6x6")]
    NotSixBySix,
    #[error("matrix is not square")]
    NotSquare,
    #[error("index out of range: ({0}, {1})")]
    IndexOutOfRange(usize, usize),
    #[error("homogenization degree {given} is smaller than total degree {actual}")]
    DegreeTooSmall { given: usize, actual: usize },
    #[error("zero polynomial has no projective normalization")]
    ZeroPolynomial,
    #[error("variable sets do not match: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("parse error at offset {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("degenerate architecture: {0}")]
    DegenerateArchitecture(String),
    #[error("half-turn not representable by Cayley parameters")]
    HalfTurn,
    #[error("identically singular architecture (det Jac = 0)")]
    IdenticallySingular,
    #[error("zero direction vector")]
    ZeroDirection,

    #[error("degenerate base: {0}")]
    DegenerateBase(String),
    #[error("quadric degenerate or base point on vertex")]
    DegenerateQuadric,
    #[error("zero twist")]
    ZeroTwist,

    #[error("rank < 5 at requested point")]
    RankDrop,
    #[error("twist extension undefined at this direction")]
    ExtensionUndefined,
    #[error("indeterminacy point of Pos (Cramer determinant vanishes)")]
    PosIndeterminacy,
    #[error("twist is not on the quadric (residuals {0:?})")]
    NotOnQuadric([f64; 3]),
    #[error("point is not on the surface (residual {0})")]
    NotOnSurface(f64),

    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("input error: {0}")]
    Input(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
