use alloc::string::String;
use num_bigint::BigInt;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("m = {0} is not squarefree")]
    NotSquarefree(u64),
    #[error("m must be greater than 1, got {0}")]
    DegenerateQuadratic(i64),
    #[error("defining polynomial is not totally real")]
    NotTotallyReal,
    #[error("not a Galois field (the Galois restriction requires d automorphisms forming a group of order d): {0}")]
    NotGalois(String),
    #[error("unit basis must have d-1 = {expected} elements, got {got}")]
    UnitCount { expected: usize, got: usize },
    #[error("unit {index} has norm {norm}, expected +1 or -1")]
    BadUnitNorm { index: usize, norm: BigInt },
    #[error("zero ideal: every generator is zero")]
    ZeroIdeal,
    #[error("not a prime ideal: {0}")]
    NotPrime(String),
    #[error("operation requires a real quadratic field")]
    NotQuadratic,
    #[error("prime ideals above {0} are not fully supplied by the field description")]
    MissingPrimes(u64),
    #[error("unknown prime {0}")]
    UnknownPrime(String),
    #[error("malformed prime key `{0}` (expected <residue_char>.<norm>.<index>)")]
    BadPrimeKey(String),
    #[error("principalization failed: {0}")]
    Principalization(String),
    #[error("invalid field description: {0}")]
    Invalid(String),
}
