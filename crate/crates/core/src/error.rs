use thiserror::Error;

/// Errors raised by the library. Mathematical check failures are reported in
/// values (reports), not through this type, except where an operation cannot
/// produce a meaningful result.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid complex: {0}")]
    ComplexInvalid(String),
    #[error("not a chain map: {0}")]
    NotChainMap(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("table is not associative: {0}")]
    NotAssociative(String),
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("chain has degree zero")]
    DegreeZero,
    #[error("degree underflow: {0}")]
    DegreeUnderflow(String),
    #[error("operands belong to different algebras")]
    ParentMismatch,
    #[error("brace result would have negative arity")]
    ArityUnderflow,
    #[error("cochain arity {arity} exceeds chain degree {degree}")]
    ArityExceedsDegree { arity: usize, degree: usize },
    #[error("tensor length exceeds the configured bound {0}")]
    LengthBound(usize),
    #[error("not an algebra map: {0}")]
    NotAlgebraMap(String),
    #[error("ideal is not nilpotent")]
    NotNilpotent,
    #[error("subspace is not a two-sided ideal: {0}")]
    NotIdeal(String),
    #[error("window too small: {0}")]
    WindowTooSmall(String),
    #[error("axiom `{axiom}` failed: {witness}")]
    AxiomFailure { axiom: String, witness: String },
    #[error("arity {0} exceeds the configured bound")]
    ArityBound(usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("tree exceeds the configured bound: {0}")]
    TreeBound(String),
    #[error("unknown operad `{0}`")]
    UnknownName(String),
    #[error("parameter out of bounds: {0}")]
    Bound(String),
    #[error("symbols use different variable sets")]
    VariableMismatch,
    #[error("invalid collection: {0}")]
    InvalidCollection(String),
}

pub type Result<T> = std::result::Result<T, Error>;
