//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("characteristic {0} is neither 0 nor prime")]
    NonPrimeCharacteristic(u64),
    #[error("extension polynomial is reducible over the prime field: {0}")]
    ReducibleExtension(String),
    #[error("extension polynomial is invalid: {0}")]
    BadExtension(String),
    #[error("scalars belong to different fields ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("matrix entries belong to different rings")]
    RingMismatch,
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero raised to a negative power")]
    ZeroToNegativePower,
    #[error("denominator {0} is not invertible modulo {1}")]
    NonInvertibleDenominator(String, u64),
    #[error("polynomial is not divisible")]
    NotDivisible,
    #[error("negative exponent where a plain polynomial is required: {0}")]
    NegativeExponent(String),
    #[error("polynomial is not univariate in {0}")]
    NotUnivariate(&'static str),
    #[error("pseudo-remainder divisor is constant in {0}")]
    ConstantDivisor(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("catalog label not admissible: {0}")]
    InadmissibleLabel(String),
    #[error("zero parameter: c1 and c2 must be nonzero")]
    ZeroParameter,
    #[error("operation requires irreducible representations; input is reducible")]
    ReducibleInput,
    #[error("representation failed validation: {0}")]
    InvalidRep(String),
    #[error("no catalog candidate matches the input representation (possible bug or counterexample)")]
    NoCandidateMatch,
    #[error("constructed matrix disagrees with the reference {family} matrix at entry ({row},{col}): built {built}, expected {expected}")]
    ReferenceMismatch {
        family: &'static str,
        row: usize,
        col: usize,
        built: String,
        expected: String,
    },
    #[error("clearing monomial c1^{stated_e1}*c2^{stated_e2} leaves negative exponents; minimal clearing is c1^{needed_e1}*c2^{needed_e2}")]
    ClearingMismatch {
        stated_e1: i64,
        stated_e2: i64,
        needed_e1: i64,
        needed_e2: i64,
    },
    #[error("membership claim failed for {script}: {detail}")]
    ClaimFailed { script: String, detail: String },
    #[error("exception-set candidate {0} has contradictory status")]
    AmbiguousCandidate(String),
    #[error("unknown census case: {0}")]
    UnknownCase(String),
    #[error("unknown elimination script: {0}")]
    UnknownScript(String),
    #[error("unknown rewriting preset: {0}")]
    UnknownPreset(String),
    #[error("malformed eigenvalue pattern: {0}")]
    BadPattern(String),
    #[error("{0}")]
    Invalid(String),
}
