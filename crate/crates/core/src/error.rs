use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Malformed or out-of-range user input (bad CSV rows, labels, parameters).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("design matrix is rank deficient (condition estimate {condition:.3e})")]
    DesignDegenerate { condition: f64 },

    #[error("interior-point solver did not converge after {iterations} iterations (duality gap {gap:.3e})")]
    Convergence { iterations: usize, gap: f64 },

    #[error("brute-force oracle limited to n <= {limit}, got n = {n}")]
    OracleTooLarge { n: usize, limit: usize },

    #[error("samples have no spread (sd and IQR both zero)")]
    DegenerateSpread,

    #[error("bandwidth must be positive, got {0}")]
    InvalidBandwidth(f64),

    #[error("group {group} has no positive residuals; the shortfall set is empty")]
    EmptyShortfall { group: u8 },

    #[error("density-weighted covariate sum U_f = {0} is not positive")]
    DegenerateDensity(f64),

    #[error("least-squares fit is degenerate: {0}")]
    DegenerateRegression(String),

    #[error("value {0} outside the open unit interval")]
    Domain(f64),

    #[error("{failed} of {reps} replications failed; configuration is unstable")]
    UnstableConfiguration { failed: usize, reps: usize },

    #[error("no size in [{lower}, {upper}] reaches the target power {target}")]
    Bounds { lower: usize, upper: usize, target: f64 },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Whether the failure comes from the supplied data or arguments rather
    /// than from a numerical degeneracy.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::InvalidInput(_) | Error::Io(_) | Error::Domain(_))
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
