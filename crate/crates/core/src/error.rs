use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("simple root index {index} out of range 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("{0} is not a root of the datum")]
    NotARoot(String),
    #[error("the zero vector is not a root")]
    ZeroRoot,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("characteristic 2 is not allowed for a root datum with a component of type C")]
    Char2Forbidden,
    #[error("{0} is neither 0 nor a prime")]
    BadCharacteristic(u64),
    #[error("the fiber over {0} is empty")]
    EmptyFiber(String),
    #[error("the word is empty")]
    EmptyWord,
    #[error("class is not in the image of the restriction: {0}")]
    NotInImage(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
