use thiserror::Error;

/// Failure modes shared by every numerical routine in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not converge: {0}")]
    NonConvergence(String),

    #[error("support error: {0}")]
    Support(String),

    #[error("line integrand does not decay at the window edges: {0}")]
    DecayViolation(String),

    #[error("zero mass: {0}")]
    ZeroMass(String),

    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("overflow: {0}")]
    Overflow(String),

    #[error("singular weight: {0}")]
    SingularWeight(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl Error {
    /// Stable machine-readable category, used in CLI reports.
    pub fn category(&self) -> &'static str {
        match self {
            Error::Pole(_) => "pole",
            Error::Domain(_) => "domain",
            Error::NonConvergence(_) => "non_convergence",
            Error::Support(_) => "support",
            Error::DecayViolation(_) => "decay_violation",
            Error::ZeroMass(_) => "zero_mass",
            Error::InsufficientData(_) => "insufficient_data",
            Error::Overflow(_) => "overflow",
            Error::SingularWeight(_) => "singular_weight",
            Error::InvalidInput(_) => "invalid_input",
            Error::Io { .. } => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
