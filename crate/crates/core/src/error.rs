use thiserror::Error;

/// Errors raised by surface construction, residual evaluation and the
/// stability analysis.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter or profile lies outside the domain where the operation is
    /// defined (for example `|sin psi| > 1`, a non-positive radius, or a
    /// closed-surface operation applied to an open surface).
    #[error("domain error: {0}")]
    Domain(String),

    /// The sampled profile violates a structural invariant (non-uniform
    /// arclength, irregular pole, mismatched tube closure, ...).
    #[error("invalid profile: {0}")]
    Profile(String),

    /// A numerical procedure failed to converge or a linear system was
    /// singular.
    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn profile(msg: impl Into<String>) -> Self {
        Error::Profile(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    /// True for failures of an iterative or linear-algebra step, as opposed to
    /// invalid input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::Numerical(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
