use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("sqrt-q must lie in (0,1), got {0}")]
    InvalidBase(String),
    #[error("cannot parse exact rational {0:?}")]
    ParseRational(String),
    #[error("alpha must be an integer >= 1 on the exact path, got {0}")]
    ExactAlpha(String),
    #[error("alpha must exceed -1, got {0}")]
    AlphaRange(String),
    #[error("moment m_{k} diverges for alpha = {alpha}: the integral of w(y)/y needs alpha > 0")]
    DivergentMoment { k: i64, alpha: String },
    #[error("moment sequence is not positive definite: beta_{n} = {value}")]
    NotPositiveDefinite { n: usize, value: String },
    #[error("zero denominator in rational function")]
    ZeroDenominator,
    #[error("integration-by-parts hypothesis fails: {0}")]
    IntegrabilityHypothesis(String),
    #[error("I(a) ratio is only defined for non-integer a, got {0}")]
    IntegerExponent(String),
    #[error("precision {bits} bits is below the floor of {floor}")]
    PrecisionTooLow { bits: usize, floor: usize },
    #[error("quadrature did not converge after {levels} levels (last difference {difference})")]
    NoConvergence { levels: usize, difference: String },
    #[error("integrand is still significant at the truncation point |tau| = {0}")]
    TailNotNegligible(String),
    #[error("point x = {0} is not in the integration domain (0, inf)")]
    OutsideDomain(String),
    #[error("index {n} exceeds the computed range {max}")]
    OutOfRange { n: usize, max: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
