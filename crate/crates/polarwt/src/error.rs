//! Error type shared by all modules.

use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A vector or index list did not have the expected length.
    LengthMismatch { expected: usize, got: usize },
    /// An index referred outside the valid range.
    IndexOutOfRange { index: usize, limit: usize },
    /// A probability was outside [0, 1].
    InvalidProbability(f64),
    /// A tunable parameter was outside its legal range.
    InvalidParameter(&'static str),
    /// The wiretap channel must be at least as noisy as the main channel.
    DegradednessViolation { eps_m: f64, eps_w: f64 },
    /// A rate-targeted construction asked for more message indices than
    /// the information set can hold.
    InfeasibleRate { requested: usize, available: usize },
    /// Dense-matrix analysis was requested above the configured block limit.
    AnalysisLimitExceeded { n: usize, limit_exp: usize },
    /// Exhaustive enumeration was requested beyond the tractable bound.
    EnumerationBoundExceeded { bits: usize, limit: usize },
    /// An operation needed the frozen vector but it was never assigned.
    FrozenVectorUnset,
}

impl Error {
    /// True for errors caused by a size/analysis limit rather than bad input.
    pub fn is_capacity(&self) -> bool {
        matches!(
            self,
            Error::AnalysisLimitExceeded { .. } | Error::EnumerationBoundExceeded { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::LengthMismatch { expected, got } => {
                write!(f, "length mismatch: expected {expected}, got {got}")
            }
            Error::IndexOutOfRange { index, limit } => {
                write!(f, "index {index} out of range (limit {limit})")
            }
            Error::InvalidProbability(p) => write!(f, "probability {p} not in [0, 1]"),
            Error::InvalidParameter(name) => write!(f, "invalid parameter: {name}"),
            Error::DegradednessViolation { eps_m, eps_w } => write!(
                f,
                "degradedness violation: eps_w ({eps_w}) must be >= eps_m ({eps_m})"
            ),
            Error::InfeasibleRate {
                requested,
                available,
            } => write!(
                f,
                "infeasible rate: {requested} message indices requested, {available} available"
            ),
            Error::AnalysisLimitExceeded { n, limit_exp } => write!(
                f,
                "block exponent {n} exceeds dense-analysis limit 2^{limit_exp}; \
                 use the butterfly encoder instead"
            ),
            Error::EnumerationBoundExceeded { bits, limit } => write!(
                f,
                "enumeration over 2^{bits} words exceeds the bound of 2^{limit}"
            ),
            Error::FrozenVectorUnset => write!(f, "frozen vector has not been assigned"),
        }
    }
}
