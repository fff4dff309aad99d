use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("speed {0} is not sub-luminal (need 0 <= v < 1)")]
    SuperLuminal(f64),

    #[error("direction is not a unit vector (norm {0})")]
    NonUnitVector(f64),

    #[error("rotation axis is undefined for collinear directions")]
    DegenerateAxis,

    #[error("four-momentum is off shell (E^2 - p^2 - m^2 = {0})")]
    OffShell(f64),

    #[error("transform is not a proper orthochronous Lorentz transform: {0}")]
    NotLorentz(String),

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("spinor has zero norm")]
    ZeroSpinor,

    #[error("weights sum to {0}, expected 1")]
    WeightSum(f64),

    #[error("invalid argument: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
