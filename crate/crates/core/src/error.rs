use thiserror::Error;

/// Errors raised by the arithmetic and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("p must be prime (got {0})")]
    NotPrime(u64),
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("field of order {p}^{m} exceeds the supported table size")]
    FieldTooLarge { p: u64, m: u32 },
    #[error("operands belong to different fields")]
    MixedFields,
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot embed F_{{p^{sub}}} into F_{{p^{sup}}}")]
    BadEmbedding { sub: u32, sup: u32 },
    #[error("series is zero to its precision O(z^{0}); cannot invert")]
    InsufficientPrecision(i64),
    #[error("exact series needs an explicit target precision")]
    ExactNeedsPrecision,
    #[error("mismatched ambient level (q = {0} vs q = {1})")]
    MixedLevels(u64, u64),
    #[error("exponent {exponent} is not divisible by p^{n}")]
    NotATwist { exponent: i64, n: u32 },
    #[error("linear factor has non-negative valuation {0}; geometric expansion does not converge")]
    OutsideConvergence(i64),
    #[error("evaluation at t = theta needs a tail certificate with slope > q - 1")]
    UncertifiedEvaluation,
    #[error("enumeration of {count} polynomials exceeds the budget of {budget}")]
    BudgetExceeded { count: u128, budget: u128 },
    #[error("convergence condition fails for argument {position}")]
    Divergent { position: usize },
    #[error("term valuations are not increasing at i = {0}")]
    NonIncreasingTerms(usize),
    #[error("Anderson-Thakur numerator not divisible by its denominator at s = {0}")]
    NonIntegralAtPolynomial(usize),
    #[error("dimension mismatch: {0}")]
    Shape(String),
    #[error("index set is not closed under taking windows: missing {0}")]
    NotSubClosed(String),
    #[error("invalid index: {0}")]
    BadIndex(String),
    #[error("scalar parameter must be invertible")]
    ZeroScalar,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
