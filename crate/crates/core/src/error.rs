use thiserror::Error;

/// Rejected input parameters for the knot, invariant and filling routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParamError {
    #[error("{name} must be odd (got {value})")]
    Even { name: &'static str, value: i64 },
    #[error("{name} must be at least {min} (got {value})")]
    BelowRange { name: &'static str, value: i64, min: i64 },
    #[error("P(-2,{p},{q}) is a torus knot, not hyperbolic")]
    NonHyperbolic { p: i64, q: i64 },
    #[error("({x},{y}) is not a coprime pair of torus knot parameters")]
    NotTorusKnot { x: i64, y: i64 },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("matrix is not square")]
    NotSquare,
    #[error("expected {expected} filling slopes, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("empty parameter range")]
    EmptyRange,
}

pub(crate) fn require_odd(name: &'static str, value: i64) -> Result<(), ParamError> {
    if value % 2 == 0 {
        return Err(ParamError::Even { name, value });
    }
    Ok(())
}

pub(crate) fn require_at_least(name: &'static str, value: i64, min: i64) -> Result<(), ParamError> {
    if value < min {
        return Err(ParamError::BelowRange { name, value, min });
    }
    Ok(())
}
