use thiserror::Error;

/// Errors raised by the domain-level contracts of the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not-odd-prime: {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("bad-degree: extension degree must be >= 1")]
    BadDegree,
    #[error("overflow: p^n exceeds the 2^40 field-size cap")]
    Overflow,
    #[error("spec-mismatch: operands belong to different fields")]
    SpecMismatch,
    #[error("zero-inverse: attempted to invert zero")]
    ZeroInverse,
    #[error("singular-lambda: lambda in {{0, 1}} gives a singular Legendre curve")]
    SingularLambda,
    #[error("singular-quartic: lambda in {{0, 1, -3}} gives a singular quartic")]
    SingularQuartic,
    #[error("zero-twist: twist parameter d must be nonzero")]
    ZeroTwist,
    #[error("not-prime-power: {0} is not a prime power")]
    NotPrimePower(u64),
    #[error("not-odd-prime-power: {0} is not an odd prime power")]
    NotOddPrimePower(u64),
    #[error("zero-modulus: polynomial modulus must be nonzero")]
    ZeroModulus,
    #[error("prime-mismatch: polynomials over different prime fields")]
    PrimeMismatch,
    #[error("bad-index: {0} is not a canonical element index for this field")]
    BadIndex(u64),
    #[error("bad-target: target count must be a nonnegative multiple of 4")]
    BadTarget,
    #[error("unsupported-method: the hasse method needs q = p or q = p^2")]
    UnsupportedMethod,
    #[error("bad-exponent: hasse exponent must be 1 (q = p) or 1 + p (q = p^2)")]
    BadExponent,
    #[error("non-distinct: the three abscissas must be pairwise distinct")]
    NonDistinct,
    #[error("sweep-cap: q = {0} exceeds the sweep budget (cap {1})")]
    SweepCap(u64, u64),
    #[error("quartic-cap: q = {0} exceeds the quartic sweep budget (cap {1})")]
    QuarticCap(u64, u64),
    #[error("prime-cap: p = {0} exceeds the Hasse polynomial cap (2^20)")]
    PrimeCap(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
