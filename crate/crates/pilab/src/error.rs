use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the 2^31 cap")]
    ModulusTooLarge(u64),
    #[error("division by zero in F_{0}")]
    DivisionByZero(u32),
    #[error("field mismatch: F_{0} vs F_{1}")]
    FieldMismatch(u32, u32),
    #[error("alphabet mismatch: {0} vs {1} generators")]
    AlphabetMismatch(u8, u8),
    #[error("letter {letter} outside alphabet 1..={n}")]
    LetterOutOfRange { letter: u8, n: u8 },
    #[error("denominator {0} is not invertible modulo {1}")]
    BadDenominator(String, u32),
    #[error("term budget exceeded: {required} terms > cap {cap}")]
    TermBudget { required: u128, cap: u128 },
    #[error("point budget exceeded: job needs {required} points, budget is {budget}")]
    PointBudget { required: String, budget: u64 },
    #[error("the zero polynomial is rejected here")]
    ZeroPolynomial,
    #[error("shard index {index} out of range for {total} shards")]
    BadShard { index: u64, total: u64 },
    #[error("parse error at byte {at}: {msg}")]
    Parse { at: usize, msg: String },
    #[error("empty locus at q={0}: dimension undefined")]
    EmptyLocus(u32),
    #[error("malformed relation: {0}")]
    MalformedRelation(String),
    #[error("{0}")]
    Precondition(String),
}

impl Error {
    pub(crate) fn pre(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
