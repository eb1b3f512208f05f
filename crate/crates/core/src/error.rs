use thiserror::Error;

use crate::laurent::LaurentPoly;
use crate::obp::AdmissibilityReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("sigma is not a permutation of 1..{0}")]
    NotAPermutation(usize),
    #[error("block width k_{index} = {value} is not positive")]
    NonPositiveWidth { index: usize, value: i64 },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("total block size {0} exceeds 2^31")]
    SizeTooLarge(u64),
    #[error("index {index} outside 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },
    #[error("orbit of {0} did not return within K steps")]
    NonTermination(usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix has a negative entry at ({0}, {1})")]
    NegativeEntry(usize, usize),
    #[error("matrix is not irreducible")]
    NotIrreducible,

    #[error("ring mismatch: {0} vs {1} t-variables")]
    RingMismatch(usize, usize),
    #[error("division is not exact, remainder {}", .remainder.to_text())]
    InexactDivision { remainder: Box<LaurentPoly> },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("basis override does not span the invariant cohomology lattice")]
    OverrideNotAKernelBasis,
    #[error("OBP is not admissible: {}", .0.failures.join("; "))]
    NotAdmissible(Box<AdmissibilityReport>),
    #[error("pipeline integrity failure: {0}")]
    PipelineIntegrity(String),

    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("zero vector")]
    ZeroVector,
    #[error("polynomial has no real root")]
    NoRealRoot,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("class lies outside the fibered cone")]
    OutsideCone,

    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("sigma(n) must equal 1 for the k_n transform")]
    PreconditionSigmaN,
    #[error("class {0:?} is not primitive")]
    NotPrimitive(Vec<i64>),
    #[error("a_m = {a_m} is below the bound {bound}")]
    BoundViolated { a_m: i64, bound: i64 },
}
