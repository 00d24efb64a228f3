use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("starting point is outside the effective domain")]
    InfeasibleStart,

    #[error("descent direction admits an unbounded step (no finite minimizer)")]
    Unbounded,

    #[error("inequality system is empty (negative cycle in the auxiliary graph)")]
    NegativeCycle,

    #[error("point violates the inequality system, cannot build a potential: {0}")]
    InvalidPotential(String),

    #[error("no perfect matching exists: {0}")]
    NoPerfectMatching(String),

    #[error("dual point is not optimal: its tight subgraph has no perfect matching")]
    NoPerfectTightMatching,

    #[error("no minimizer found in the search box")]
    EmptyArgmin,

    #[error("size limit exceeded: {what} is {got}, limit {limit}")]
    SizeLimit {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InfeasibleStart
            | Error::NegativeCycle
            | Error::NoPerfectMatching(_)
            | Error::EmptyArgmin => 2,
            Error::LengthMismatch { .. }
            | Error::SizeLimit { .. }
            | Error::InvalidInput(_)
            | Error::Io(_)
            | Error::Json(_)
            | Error::Csv(_) => 3,
            Error::Unbounded
            | Error::InvalidPotential(_)
            | Error::NoPerfectTightMatching
            | Error::Invariant(_) => 4,
        }
    }
}

pub(crate) fn check_len(expected: usize, got: usize) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, got })
    }
}
