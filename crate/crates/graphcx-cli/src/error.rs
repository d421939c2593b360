//! Errors of the command-line front end and their exit codes.

use graphcx::cohomology::CohomologyError;
use graphcx::complexes::ComplexError;
use graphcx::ger::GerError;
use graphcx::gra::GraError;
use graphcx::graphs::GraphError;
use graphcx::qlinalg::LinalgError;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("verification failed: {0}")]
    Verify(String),
    #[error("{0}")]
    Budget(String),
    #[error("{0}")]
    Parse(String),
    #[error("profile mismatch: {0}")]
    Profile(String),
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verify(_) => 1,
            CliError::Budget(_) => 2,
            CliError::Parse(_) => 3,
            CliError::Profile(_) => 4,
            CliError::Consistency(_) => 5,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<GraphError> for CliError {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            GraphError::ArityMismatch { .. } => CliError::Profile(e.to_string()),
            _ => CliError::Parse(e.to_string()),
        }
    }
}

impl From<GraError> for CliError {
    fn from(e: GraError) -> Self {
        match e {
            GraError::ProfileMismatch(m) => CliError::Profile(m),
            GraError::Graph(g) => g.into(),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<GerError> for CliError {
    fn from(e: GerError) -> Self {
        match e {
            GerError::KindMismatch => CliError::Profile(e.to_string()),
            GerError::Graph(g) => g.into(),
            other => CliError::Parse(other.to_string()),
        }
    }
}

impl From<ComplexError> for CliError {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::Profile(m) => CliError::Profile(m),
            ComplexError::Parse(m) => CliError::Parse(m),
        }
    }
}

impl From<CohomologyError> for CliError {
    fn from(e: CohomologyError) -> Self {
        match e {
            CohomologyError::BudgetExceeded { .. } => CliError::Budget(e.to_string()),
            CohomologyError::Graph(g) => g.into(),
            CohomologyError::Complex(c) => c.into(),
            CohomologyError::WindowTooShort { .. } | CohomologyError::DegreeMismatch { .. } | CohomologyError::UnknownComplex(_) => {
                CliError::Parse(e.to_string())
            }
            CohomologyError::Linalg(LinalgError::Parse(m)) => CliError::Parse(m),
            other => CliError::Consistency(other.to_string()),
        }
    }
}
