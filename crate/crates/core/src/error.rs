use thiserror::Error;

/// Errors raised by the numerical routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error in {func}: {detail}")]
    Domain { func: &'static str, detail: String },

    #[error("quadrature did not converge: best estimate {value:e} with error estimate {error_estimate:e} after {evaluations} evaluations")]
    NonConvergence {
        value: f64,
        error_estimate: f64,
        evaluations: usize,
    },

    #[error("integrand is not finite at x = {at:e}")]
    NonFinite { at: f64 },

    #[error("overflow in {func}")]
    Overflow { func: &'static str },

    #[error("least-squares design matrix is rank deficient")]
    IllConditioned,

    #[error("test function `{id}` is not regular enough at the evaluation point")]
    SmoothnessTooLow { id: String },

    #[error("route {route} is not available for dimension {n}")]
    RouteMismatch { route: &'static str, n: usize },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(func: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            func,
            detail: detail.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
