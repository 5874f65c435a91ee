use thiserror::Error;

use crate::circuit::ValidationReport;

/// Errors produced by model assembly and the numerical operations built on it.
#[derive(Debug, Clone, Error)]
pub enum ModelError {
    /// The circuit description failed validation; the report lists every violation.
    #[error("invalid circuit: {0}")]
    InvalidCircuit(ValidationReport),

    /// Adiabatic elimination was requested on a circuit without auxiliary dots.
    #[error("nothing to eliminate: circuit has no auxiliary dots")]
    NothingToEliminate,

    /// The resolvent (-iw I - M) could not be solved reliably at the requested
    /// frequency. Carries a 1-norm condition estimate.
    #[error("numerically singular resolvent at omega = {omega} (condition estimate {condition:.3e})")]
    SingularResolvent { omega: f64, condition: f64 },

    /// No loop phase of unit modulus satisfies the directionality requirement
    /// for the given coupling magnitudes.
    #[error("no pure-phase solution; adjust lambda1/lambda2 (required modulus {required_modulus})")]
    NoPurePhaseSolution { required_modulus: f64 },

    /// A parameter violated a stated precondition.
    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
}

impl ModelError {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        ModelError::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
