use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Cartan type {0}")]
    InvalidCartanType(String),
    #[error("vector is not a root of {0}")]
    NotARoot(String),
    #[error("vector is not regular: it is orthogonal to the root at index {root}")]
    NotRegular { root: usize },
    #[error("not a fundamental system: {0}")]
    NotFundamental(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("map is not an isometry on the span of the roots")]
    NotIsometry,
    #[error("map does not preserve the root system")]
    NotRootPreserving,
    #[error("map is not an involution")]
    NotInvolution,
    #[error("sigma-system is not normal: sigma(a) - a is a root for the root at index {witness}")]
    NotNormal { witness: usize },
    #[error("fundamental system is not sigma-fundamental")]
    NotSigmaFundamental,
    #[error("arrow extraction is ambiguous at node {node}")]
    AmbiguousArrow { node: usize },
    #[error("inadmissible Satake diagram: {0}")]
    Inadmissible(String),
    #[error("malformed diagram: {0}")]
    MalformedDiagram(String),
    #[error("Weyl group of order {order} exceeds the enumeration cap {cap}")]
    CapExceeded { order: u64, cap: u64 },
    #[error("E8 Weyl group enumeration needs an explicit opt-in")]
    E8NotEnabled,
    #[error("order of sigma1 sigma2 exceeds {0}")]
    OrderCapExceeded(u32),
    #[error("double sigma-system is not canonical for the given fundamental system")]
    NotCanonical,
    #[error("Cartan types differ: {0} vs {1}")]
    TypeMismatch(String, String),
    #[error("unsupported algebra {0:?}")]
    UnsupportedAlgebra(String),
    #[error("unknown involution class {0:?}")]
    UnknownClass(String),
    #[error("parameter out of range: {0}")]
    BadParameter(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
