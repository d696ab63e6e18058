use thiserror::Error;

/// Errors raised by the simulation modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input lies outside the domain where the model is defined.
    #[error("domain error: {0}")]
    Domain(String),
    /// A malformed argument (wrong block length, empty list, ...).
    #[error("invalid argument: {0}")]
    Argument(String),
    /// The circuit equations have a vanishing denominator.
    #[error("circuit singularity: {0}")]
    Singularity(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn ensure_positive(name: &str, value: f64) -> Result<()> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("{name} must be finite and > 0, got {value}")))
    }
}
