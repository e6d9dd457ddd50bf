use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree {0} out of range (1..=16)")]
    DegreeOutOfRange(u32),
    #[error("field of order {p}^{m} does not fit the 32-bit element encoding")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("group enumeration exceeded the element cap of {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("element is not a member of the group")]
    NotAMember,
    #[error("not a subgroup of the ambient group")]
    NotASubgroup,

    #[error("central idempotents do not split over GF({p}^{m})")]
    SplitFieldTooSmall { p: u32, m: u32 },
    #[error("algebra dimension {dim} exceeds the cap of {cap}")]
    DimCapExceeded { dim: usize, cap: usize },

    #[error("{divisor} does not divide {value}")]
    NonDivisor { value: u64, divisor: u64 },
    #[error("known summands {known} exceed total {total}")]
    NegativeResult { total: u64, known: u64 },
    #[error("number of simple modules must be 1 or 3 for a Klein-four block, got {0}")]
    InvalidL(u32),
    #[error("Sylow {0}-subgroup is trivial")]
    TrivialSylow(u32),

    #[error("invalid category: {0}")]
    InvalidCategory(String),
    #[error("generator images do not define a group action: {0}")]
    NotAnAction(String),
    #[error("nerve has {count} chains in degree {degree}, cap is {cap}")]
    NerveCapExceeded { degree: usize, count: usize, cap: usize },

    #[error("shape error: {0}")]
    Shape(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
