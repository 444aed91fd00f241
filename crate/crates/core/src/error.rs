use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime (only prime fields are supported)")]
    NotPrime(u64),
    #[error("{g} is not a primitive root of {q}")]
    NotPrimitive { q: u32, g: u32 },
    #[error("block size k = {0} is too small (k >= 3 required)")]
    BlockSizeTooSmall(u32),
    #[error("q = {q} is not admissible for k = {k} (need a prime q = 2k+1 mod 4k)")]
    NotAdmissible { q: u32, k: u32 },
    #[error("zero is not in the multiplicative group")]
    ZeroElement,
    #[error("element {value} is out of range for F_{q}")]
    OutOfRange { value: u64, q: u32 },
    #[error("sign vector has length {got}, expected {expected}")]
    SignLength { expected: usize, got: usize },
    #[error("the first sign must be 0 (V_0 = C_0)")]
    NonzeroFirstSign,
    #[error("sign entries must be 0 or 1, got {0}")]
    BadSign(u8),
    #[error("row {row} has {got} entries, expected {expected}")]
    RowLength { row: usize, expected: usize, got: usize },
    #[error("zero entry at row {row}, column {col}")]
    ZeroEntry { row: usize, col: usize },
    #[error("matrix is not a valid Heffter difference matrix: {0}")]
    InvalidHdm(String),
    #[error("multiplier {0} is not in the index-2k subgroup")]
    NotInSubgroup(u32),
    #[error("blocks {left} and {right} share more than one element")]
    AmbiguousCell { left: usize, right: usize },
    #[error("parallel classes do not cover the same points")]
    ClassMismatch,
    #[error("block {0:?} admits no ordering with distinct partial sums")]
    NoSimpleOrdering(Vec<u32>),
    #[error("block {0:?} is not zero-sum, contains zero, or contains an opposite pair")]
    InvalidBlock(Vec<u32>),
    #[error("block {0:?} is not simple in its stored order")]
    NotSimple(Vec<u32>),
    #[error("search budget of {budget} nodes exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("exhaustive search found no matrix with {r} rows ({nodes} nodes)")]
    NotFoundExhaustive { r: usize, nodes: u64 },
    #[error("empty choice set at stage {stage} while building row {row}")]
    EmptyChoiceSet { stage: String, row: usize },
    #[error("certificate error: {0}")]
    Certificate(String),
}
