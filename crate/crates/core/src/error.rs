use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A closed-form denominator vanished.
    #[error("singular configuration: {0}")]
    Singular(String),

    #[error("inconsistent parameters: {0}")]
    Inconsistent(String),

    #[error("fixed-point iteration did not converge after {iterations} iterations (relative residual {residual:.3e})")]
    Convergence { iterations: usize, residual: f64 },

    /// The drift matrix has an eigenvalue with non-negative real part (within margin).
    #[error("drift matrix is not asymptotically stable (max Re(eig) = {max_re_eig:.6e} rad/s)")]
    Unstable { max_re_eig: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("bracketing failed: {0}")]
    Bracket(String),

    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short machine-readable tag used in CLI error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Singular(_) => "singular",
            Error::Inconsistent(_) => "inconsistent",
            Error::Convergence { .. } => "convergence",
            Error::Unstable { .. } => "unstable",
            Error::Numerical(_) => "numerical",
            Error::Bracket(_) => "bracket",
            Error::Config { .. } => "config",
            Error::Io(_) => "io",
        }
    }

    pub fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            path: path.into(),
            message: message.into(),
        }
    }
}
