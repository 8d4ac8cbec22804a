use thiserror::Error;

/// Errors raised by the algebra layer.
///
/// Every variant except [`Error::InvariantViolation`] is a domain error: the
/// inputs fall outside what the operation is defined for.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{value} is not prime")]
    NotPrime { value: u64 },

    #[error("{value} is not a prime power")]
    NotPrimePower { value: u64 },

    #[error("{what} = {value} is outside the supported range {range}")]
    OutOfRange {
        what: &'static str,
        value: u64,
        range: &'static str,
    },

    #[error("{a} is divisible by the modulus {p}")]
    NotInvertible { a: i64, p: u64 },

    #[error("root multiplicity is undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("polynomial is not a product of cyclotomic polynomials")]
    NotCyclotomicProduct,

    #[error("matrix does not have finite order")]
    NotFiniteOrder,

    #[error("character order t = {t} does not divide p - 1 = {}; no Galois element realizes this character order at p", .p - 1)]
    CharacterOrder { t: u64, p: u64 },

    #[error("p = {p} divides q = {q}: p must differ from the characteristic")]
    ExcludedCharacteristic { p: u64, q: u64 },

    #[error("malformed matrix: {0}")]
    Shape(String),

    #[error("phi(t) = {phi} exceeds d = {d}; no torus of this dimension has positive rank")]
    NoWitness { d: u64, t: u64, phi: u64 },

    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
