use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("characteristic 2 is not supported; q must be odd")]
    EvenCharacteristic,
    #[error("field GF({p}^{e}) exceeds the configured bound q <= {max_q}")]
    FieldTooLarge { p: u32, e: u32, max_q: u32 },
    #[error("attempted to invert zero")]
    ZeroInverse,
    #[error("the zero vector does not represent a projective point")]
    ZeroVector,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("the two points coincide and do not span a line")]
    CoincidentPoints,
    #[error("parameter {name} = {value} is outside its range {allowed}")]
    ParameterOutOfRange { name: &'static str, value: i64, allowed: String },
    #[error("{0} is empty for this q")]
    EmptyFamily(String),
    #[error("set is not a two-character set (plane intersection sizes {0:?})")]
    NotTwoCharacter(Vec<usize>),
    #[error("{what} is limited to q <= {max}, got q = {q}")]
    BoundExceeded { what: &'static str, q: u32, max: u32 },
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
