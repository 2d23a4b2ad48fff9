use thiserror::Error;

/// Errors raised anywhere in the numerical stack.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("precision of {0} digits is below the minimum of {min}", min = crate::hp::MIN_DIGITS)]
    PrecisionTooLow(u32),

    #[error("{function} has a pole at {at}")]
    Pole { function: &'static str, at: String },

    #[error("{function}: argument outside the domain ({reason})")]
    Domain {
        function: &'static str,
        reason: String,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} did not converge: {detail}")]
    NonConvergence { what: &'static str, detail: String },

    #[error("cannot parse {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn domain(function: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            function,
            reason: reason.into(),
        }
    }

    /// True for failures of an iterative numerical method (as opposed to bad input).
    pub fn is_non_convergence(&self) -> bool {
        matches!(self, Error::NonConvergence { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
