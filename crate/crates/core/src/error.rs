use thiserror::Error;

/// Failure modes shared by every module.
///
/// The two "alarm" variants, [`Error::VerificationFailed`] and
/// [`Error::NotAUnit`], mean a claimed nonvanishing statement failed on an
/// input that satisfies the hypothesis `p ∤ vol, p > (n+4)D`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("point {0:?} is outside the cone")]
    ConeViolation(Vec<i64>),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("polynomial fit has non-integer coefficient {0}")]
    NonIntegralFit(String),
    #[error("slope transfer inconsistent at slope {0}")]
    Inconsistent(String),
    #[error("coefficient c_{0} is not p-integral")]
    NonIntegral(usize),
    #[error("p-adic precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("operands disagree on modulus or truncation")]
    MixedModulus,
    #[error("basis cutoff too small: {0}")]
    TruncationUnsound(String),
    #[error("verification failed at k={k}, side={side}")]
    VerificationFailed { k: u32, side: String },
    #[error("vertex coefficient of f vanishes at {0:?}")]
    WrongPolytope(Vec<i64>),
    #[error("block factorization mismatch at k={k}, side={side}")]
    FactorizationMismatch { k: u32, side: String },
    #[error("leading block scalar is not a unit: {0}")]
    NotAUnit(String),
    #[error("SCALE_EXCEEDED: {0}")]
    ScaleExceeded(String),
    #[error("series index {0} must be below p")]
    IndexTooLarge(usize),
    #[error("oracle and Dwork disagree at u_{ell}, degree {degree}")]
    Mismatch { ell: usize, degree: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
