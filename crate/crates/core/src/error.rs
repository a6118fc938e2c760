use thiserror::Error;

pub type Result<T, E = SolverError> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("configuration error: {0}")]
    Config(String),

    #[error("usage error: {0}")]
    Usage(String),

    #[error("shape error: {0}")]
    Shape(String),

    /// A density, pressure or thickness that must be positive is not.
    #[error("positivity failure: {quantity} = {value:e} at cell ({j}, {k})")]
    Positivity { quantity: &'static str, value: f64, j: isize, k: isize },

    #[error("non-finite value in component {component} at cell ({j}, {k}){}", stage.map(|s| format!(" during RK stage {s}")).unwrap_or_default())]
    NonFinite { component: usize, j: isize, k: isize, stage: Option<usize> },

    #[error("time step {dt:e} fell below the minimum {dt_min:e} at t = {t}")]
    Stagnation { dt: f64, dt_min: f64, t: f64 },

    #[error("exceeded the maximum of {0} time steps")]
    TooManySteps(usize),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("malformed snapshot: {0}")]
    Parse(String),
}

impl SolverError {
    /// Process exit code used by the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            SolverError::Config(_) | SolverError::Usage(_) | SolverError::Shape(_) => 2,
            SolverError::Positivity { .. }
            | SolverError::NonFinite { .. }
            | SolverError::Stagnation { .. }
            | SolverError::TooManySteps(_) => 3,
            SolverError::Io { .. } | SolverError::Parse(_) => 4,
        }
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        SolverError::Io { path: path.as_ref().display().to_string(), source }
    }
}
