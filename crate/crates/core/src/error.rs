use thiserror::Error;

/// Every failure mode surfaced by the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("domain error in `{field}`: {detail}")]
    Domain { field: &'static str, detail: String },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("singular policy rule: {0}")]
    SingularPolicy(String),

    #[error("operation requires the sigma = 1, beta = 1 limit regime: {0}")]
    RequiresLimitRegime(String),

    #[error("general formulas require beta < 1 (got beta = {0})")]
    RequiresDiscounting(f64),

    #[error("moment divergence: {0}")]
    MomentDivergence(String),

    #[error("degenerate system: {0}")]
    DegenerateSystem(String),

    #[error("no convergence after {iterations} iterations: {detail}")]
    NonConvergence { iterations: usize, detail: String },

    #[error("not available: {0}")]
    NotAvailable(String),

    #[error("classification does not flip between {lo} and {hi}")]
    NoFlip { lo: f64, hi: f64 },

    #[error(
        "non-hyperbolic system: eigenvalue modulus {modulus} within tolerance of the unit circle"
    )]
    NonHyperbolic { modulus: f64 },

    #[error(
        "Blanchard-Kahn count failure: {n_outside} explosive roots for {n_jumps} jump variables"
    )]
    WrongCount { n_outside: usize, n_jumps: usize },
}

impl ModelError {
    pub(crate) fn domain(field: &'static str, detail: impl Into<String>) -> Self {
        ModelError::Domain {
            field,
            detail: detail.into(),
        }
    }

    /// Short machine-readable tag, used by structured error output.
    pub fn kind(&self) -> &'static str {
        match self {
            ModelError::Domain { .. } => "DomainError",
            ModelError::UnknownPreset(_) => "UnknownPreset",
            ModelError::SingularPolicy(_) => "SingularPolicy",
            ModelError::RequiresLimitRegime(_) => "RequiresLimitRegime",
            ModelError::RequiresDiscounting(_) => "RequiresDiscounting",
            ModelError::MomentDivergence(_) => "MomentDivergence",
            ModelError::DegenerateSystem(_) => "DegenerateSystem",
            ModelError::NonConvergence { .. } => "NonConvergence",
            ModelError::NotAvailable(_) => "NotAvailable",
            ModelError::NoFlip { .. } => "NoFlip",
            ModelError::NonHyperbolic { .. } => "NonHyperbolic",
            ModelError::WrongCount { .. } => "WrongCount",
        }
    }

    /// True for errors caused by invalid inputs rather than numerical failure.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            ModelError::Domain { .. }
                | ModelError::UnknownPreset(_)
                | ModelError::RequiresLimitRegime(_)
                | ModelError::RequiresDiscounting(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, ModelError>;
