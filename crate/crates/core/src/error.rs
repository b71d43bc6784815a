use thiserror::Error;

/// Errors reported by the toolkit.
///
/// Domain rejections (`SplittingClass`, `NotInAlternating`, `OddPermutation`,
/// `Unsupported`) are distinct from resource limits (`TableLimit`,
/// `CeilingExceeded`) so that callers can map them to different exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: images are not a bijection of the domain")]
    InvalidPermutation,

    #[error("invalid partition: parts must be positive and weakly decreasing")]
    InvalidPartition,

    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },

    #[error("operation requires even permutations, got an odd one")]
    OddPermutation,

    #[error("character table for n = {n} exceeds the configured limit {limit}")]
    TableLimit { n: u32, limit: u32 },

    #[error("enumeration too large: needs {needed} items, ceiling is {ceiling}")]
    CeilingExceeded { needed: u64, ceiling: u64 },

    #[error("class {0} splits in the alternating group; the halved count formula does not apply")]
    SplittingClass(String),

    #[error("class {0} is not contained in the alternating group")]
    NotInAlternating(String),

    #[error("character sum did not reduce to an integer ({0}); this indicates an arithmetic bug")]
    NonIntegralSum(String),

    #[error("degree 6 is excluded from T-system computations (exceptional automorphisms)")]
    ExcludedDegree,

    #[error("unsupported input: {0}")]
    Unsupported(String),

    #[error("this invariant needs tuples of arity 2, got {k}")]
    ArityNotTwo { k: usize },

    #[error("two computation routes disagree: {0}")]
    SelfCheck(String),

    #[error("corrupt table cache: {0}")]
    CorruptCache(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
