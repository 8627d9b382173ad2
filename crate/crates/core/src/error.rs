use thiserror::Error;

/// Errors raised by the geometric predicates, the census and the file formats.
#[derive(Debug, Error)]
pub enum Error {
    #[error("incompatible spaces: dimension n={left} vs n={right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("a vector in C^{{n,1}} needs n >= 2, got {0} coordinates")]
    TooFewCoordinates(usize),

    #[error("zero vector has no projective class")]
    ZeroVector,

    #[error("projection rank m={m} out of range for n={n} (need 2 <= m <= n)")]
    RankOutOfRange { m: usize, n: usize },

    #[error("point in Lambda_0, projection undefined")]
    InLambdaZero,

    #[error("point outside domain of Pi")]
    OutsidePiDomain,

    #[error("point is not in Omega_(2)")]
    NotInOmega,

    #[error("degenerate determinant; classification undefined")]
    DegenerateDeterminant,

    #[error("boundary point C_x, not in fiber")]
    BoundaryPoint,

    #[error("degenerate slice directions")]
    DegenerateDirections,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("not enough Omega samples for a census ({0} found, need 2)")]
    TooFewOmegaSamples(usize),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
