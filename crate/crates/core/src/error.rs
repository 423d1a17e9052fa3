use thiserror::Error;

/// Failure modes shared by every computation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precondition failed for `{param}`: {reason}")]
    Precondition { param: String, reason: String },

    #[error("pole: factor {factor} vanishes")]
    Pole { factor: String },

    #[error("exponent alignment: denominator {denominator} does not divide q-exponent {exponent}")]
    ExponentAlignment { denominator: u64, exponent: u64 },

    #[error("q = 1 is only available through the q -> 1 limit")]
    QIsOne,

    #[error("budget exceeded: {needed} evaluation points requested, cap is {cap}")]
    BudgetExceeded { needed: u128, cap: u64 },

    #[error("precision exhausted: result is 0 modulo p^{known_to}")]
    PrecisionExhausted { known_to: i64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("parameter u is not admissible: {reason}")]
    InadmissibleU { reason: String },
}

impl Error {
    pub(crate) fn precondition(param: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Precondition {
            param: param.into(),
            reason: reason.into(),
        }
    }

    pub(crate) fn pole(factor: impl Into<String>) -> Self {
        Error::Pole {
            factor: factor.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
