use thiserror::Error;

/// Errors raised by the exact-arithmetic engine and the verification layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cyclotomic field mismatch: order {left} vs order {right}")]
    FieldMismatch { left: u64, right: u64 },
    #[error("coefficient ring mismatch in series arithmetic")]
    RingMismatch,
    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,
    #[error("series constant term is not rational; cyclotomic inversion is unsupported")]
    NonRationalConstantTerm,
    #[error("coefficient index {index} is beyond truncation order {truncation}")]
    IndexBeyondTruncation { index: usize, truncation: usize },
    #[error("modulus must be a positive odd integer, got {0}")]
    InvalidModulus(u64),
    #[error("weight must be a positive odd integer, got {0}")]
    InvalidWeight(u64),
    #[error("character index {index} out of range for modulus {modulus} (there are {count})")]
    CharacterIndexOutOfRange { modulus: u64, index: usize, count: usize },
    #[error("order must be at least 1 for symmetry identities")]
    InvalidOrder,
    #[error("the multiplier in E_k(nd) + E_k = 2 T_k(nd - 1) must be a positive odd integer, got {0}")]
    InvalidMultiplier(u64),
    #[error("cyclotomic order must be positive")]
    ZeroCyclotomicOrder,
    #[error("malformed rational literal {0:?}")]
    ParseRational(String),
    #[error("malformed cyclotomic element: {0}")]
    MalformedElement(String),
    #[error("computation cancelled")]
    Cancelled,
}

pub type Result<T> = std::result::Result<T, Error>;
