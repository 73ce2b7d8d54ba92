use thiserror::Error;

/// Errors raised by the simulation library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("time {t} outside the stroke interval [0, {tau}]")]
    Domain { t: f64, tau: f64 },

    #[error("quadrature did not converge: direct = {direct}, by-parts = {by_parts}")]
    NumericalAccuracy { direct: f64, by_parts: f64 },

    #[error("integration stalled at t = {t}: step size {step} underflowed")]
    Stiffness { t: f64, step: f64 },

    #[error("cold-bath heat {q4} is not positive; the cycle does not cool")]
    NotCooling { q4: f64 },

    #[error("total work {work} is not positive; the cycle is not a refrigerator")]
    NotRefrigerator { work: f64 },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("quantum speed limit undefined: {0}")]
    UndefinedBound(String),

    #[error("degenerate bound: {0}")]
    DegenerateBound(String),

    #[error("Fock truncation too small: tail weight {tail:e} at dimension {dim}, need about {suggested_dim}")]
    Truncation {
        tail: f64,
        dim: usize,
        suggested_dim: usize,
    },

    #[error("relative entropy diverges: {0}")]
    DivergentRelativeEntropy(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn require_positive(name: &'static str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            reason: format!("must be positive and finite, got {value}"),
        })
    }
}
