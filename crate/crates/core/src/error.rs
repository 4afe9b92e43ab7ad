use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A configuration field is out of its allowed domain.
    #[error("invalid `{field}`: {message}")]
    Validation { field: &'static str, message: String },

    #[error("resource limit: {0}")]
    Resource(String),

    /// Caller asked for an operation outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Inputs of incompatible shape were combined.
    #[error("contract violation: {0}")]
    Contract(String),

    #[error("numerical failure: {message}{}", residual.map(|r| format!(" (residual {r:.3e})")).unwrap_or_default())]
    Numerical {
        message: String,
        residual: Option<f64>,
    },

    #[error(
        "invalid temperature bracket: C({t_lo}) = {c_lo:.3e}, C({t_hi}) = {c_hi:.3e}; \
         need C(t_lo) > {threshold:e} and C(t_hi) <= {threshold:e}"
    )]
    Bracket {
        t_lo: f64,
        t_hi: f64,
        c_lo: f64,
        c_hi: f64,
        threshold: f64,
    },

    #[error("unknown preset `{name}` (valid: {valid})")]
    UnknownPreset { name: String, valid: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn validation(field: &'static str, message: impl Into<String>) -> Self {
        Error::Validation {
            field,
            message: message.into(),
        }
    }

    pub(crate) fn numerical(message: impl Into<String>, residual: Option<f64>) -> Self {
        Error::Numerical {
            message: message.into(),
            residual,
        }
    }

    /// True for failures of the numerics rather than of the inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Numerical { .. } | Error::Bracket { .. })
    }
}
