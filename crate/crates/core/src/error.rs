use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: expected {expected}")]
    Syntax { position: usize, expected: String },
    #[error("variable index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("the zero polynomial has no Newton polyhedron")]
    EmptyPolynomial,
    #[error("operation supports n = 2 only (got n = {0})")]
    UnsupportedDimension(usize),
    #[error("germ is not convenient: no pure term on axis z{axis}")]
    NotConvenient { axis: usize },
    #[error("face of weight {0:?} is not compact")]
    NonCompactFace(Vec<i64>),
    #[error("cone vertices are linearly dependent")]
    DependentVertices,
    #[error("zero vector is not a weight vector")]
    ZeroVector,
    #[error("weight vectors must be nonnegative")]
    NegativeEntry,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cone is not regular (|det| = {0})")]
    NotRegular(i64),
    #[error("cone has {got} vertices, a chart needs {n}")]
    NotFullDimensional { got: usize, n: usize },
    #[error("vertex {0} of the cone is not strictly positive")]
    NonStrictVertex(usize),
    #[error("face function of vertex {0} is not polar weighted homogeneous")]
    NotStronglyMixedHomogeneous(usize),
    #[error("radial and polar degrees of vertex {0} have different parity")]
    NonIntegerHalfDegrees(usize),
    #[error("cone is not admissible: the faces of its vertices do not intersect")]
    NotAdmissible,
    #[error("cones do not subdivide the positive orthant")]
    NotASubdivision,
    #[error("cone subdivision is missing a coordinate cone required by a restriction of f")]
    NotConvenientSubdivision,
    #[error("face of weight {0:?} is not a single-monomial vertex")]
    NotASingleMonomialVertex(Vec<i64>),
    #[error("precondition not verified: {0}")]
    PreconditionNotVerified(String),
    #[error("not defined at u = 0")]
    DomainError,
    #[error("exponents r = {r}, s = {s} must both be at least 1")]
    InvalidFraction { r: i64, s: i64 },
}

impl Error {
    /// The name of the definition or hypothesis that failed, used by the CLI
    /// in diagnostics. `None` for usage/parse problems.
    pub fn failing_definition(&self) -> Option<&'static str> {
        use Error::*;
        match self {
            Syntax { .. } | IndexOutOfRange { .. } | DimensionMismatch { .. } => None,
            EmptyPolynomial => Some("radial Newton polyhedron (needs f ≠ 0)"),
            UnsupportedDimension(_) => Some("two-variable face enumeration"),
            NotConvenient { .. } => Some("convenient germ (a pure term on every axis)"),
            NonCompactFace(_) => Some("face function (compact faces only)"),
            DependentVertices | ZeroVector | NegativeEntry => Some("simplicial cone"),
            NotRegular(_) => Some("regular simplicial cone"),
            NotFullDimensional { .. } => Some("toric chart"),
            NonStrictVertex(_) => Some("strictly positive weight vector"),
            NotStronglyMixedHomogeneous(_) | NonIntegerHalfDegrees(_) => {
                Some("strongly mixed weighted homogeneous face function")
            }
            NotAdmissible => Some("admissible cone subdivision"),
            NotASubdivision => Some("regular simplicial cone subdivision"),
            NotConvenientSubdivision => Some("convenient cone subdivision"),
            NotASingleMonomialVertex(_) => Some("monomial vertex rule"),
            PreconditionNotVerified(_) => Some("strongly polar non-negative mixed weighted homogeneous face type"),
            DomainError => Some("Wirtinger derivative off the origin"),
            InvalidFraction { .. } => Some("fractional monomial u^(r+s)/conj(u)^r with r, s ≥ 1"),
        }
    }
}
