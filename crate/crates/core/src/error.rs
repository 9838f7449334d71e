use thiserror::Error;

use crate::asym::CaseId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Arguments outside the domain of the integral.
    #[error("domain error in {func}: {reason}")]
    Domain {
        func: &'static str,
        reason: String,
    },

    /// Arguments valid for the integral but outside the regime where an
    /// asymptotic case's bracket is defined.
    #[error("{case} requires {requirement}")]
    Regime {
        case: CaseId,
        requirement: &'static str,
    },

    /// The adaptive quadrature could not reach its target.
    #[error("quadrature did not converge: {0}")]
    Convergence(String),

    #[error("requested tolerance {requested:e} outside [{floor:e}, {ceiling:e}]")]
    Tolerance {
        requested: f64,
        floor: f64,
        ceiling: f64,
    },

    #[error("invalid campaign: {0}")]
    Campaign(String),
}

impl Error {
    pub(crate) fn domain(func: &'static str, reason: impl Into<String>) -> Self {
        Error::Domain {
            func,
            reason: reason.into(),
        }
    }

    pub(crate) fn regime(case: CaseId, requirement: &'static str) -> Self {
        Error::Regime { case, requirement }
    }
}
