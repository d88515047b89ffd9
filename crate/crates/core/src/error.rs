use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroExtensionDegree,
    #[error("field of order {0} exceeds the supported size (at most 2^20 elements)")]
    FieldTooLarge(u128),
    #[error("modulus must have degree {expected}, got {got}")]
    ModulusDegree { expected: usize, got: usize },
    #[error("modulus coefficient {coeff} is not reduced modulo {p}")]
    ModulusCoefficient { coeff: u32, p: u32 },
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u32),
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("cannot parse field element {0:?}")]
    ElementSyntax(String),
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the collinear family needs a nonzero x-coordinate")]
    ZeroAbscissa,
    #[error("ell = {ell} is outside 2..={q}")]
    EllOutOfRange { ell: u32, q: u32 },
    #[error("index {index} is outside 1..={q}")]
    PlaceIndexOutOfRange { index: usize, q: u32 },
    #[error("point ({x}, {y}) is not on the curve")]
    NotOnCurve { x: u32, y: u32 },
    #[error("function has a pole at the requested place")]
    Pole,
    #[error("orbit is only defined for affine places with nonzero x-coordinate")]
    OrbitUndefined,
    #[error("window length m = {m} is outside 1..={max}")]
    WindowOutOfRange { m: usize, max: usize },
    #[error("prefix length {n} is outside 1..={len}")]
    PrefixOutOfRange { n: usize, len: usize },
    #[error("degree parameter k must be at least 1")]
    ZeroDegree,
    #[error("monomial budget must be at least 1")]
    ZeroBudget,
    #[error("brute-force enumeration of {0} candidate polynomials is too large")]
    OracleTooLarge(u128),
    #[error("invalid bound parameters: {0}")]
    BoundParams(String),
    #[error("empty parameter range")]
    EmptyRange,
    #[error("malformed CSV input: {0}")]
    Csv(String),
    #[error("I/O error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(err: csv::Error) -> Self {
        Error::Csv(err.to_string())
    }
}
