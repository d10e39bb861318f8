use thiserror::Error;

/// Every failure the pipeline can surface, tagged with the stage that raised it.
#[derive(Debug, Error)]
pub enum Error {
    #[error("weyl: mode-count mismatch ({left} vs {right})")]
    Dimension { left: usize, right: usize },

    #[error("adjoint: operator is not quadratic; offending terms: {terms}")]
    NotQuadratic { terms: String },

    #[error("adjoint: operator is not hermitian; H - H^dagger = {residual}")]
    NotHermitian { residual: String },

    #[error("adjoint: matrix dimension mismatch ({left} vs {right})")]
    MatrixShape { left: usize, right: usize },

    #[error("spectral: {0}")]
    NumericFailure(String),

    #[error("ladders: spectrum is defective at lambda = {lambda} (algebraic {algebraic}, geometric {geometric})")]
    UnsupportedDefective {
        lambda: String,
        algebraic: usize,
        geometric: usize,
    },

    #[error("{stage}: verification failed: {detail}")]
    Verification { stage: &'static str, detail: String },

    #[error("wavefn: {0}")]
    Precondition(String),

    #[error("bateman: {0}")]
    InvalidParams(String),

    #[error("dsl: {0}")]
    Parse(#[from] crate::dsl::ParseError),

    #[error("input: {0}")]
    Input(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::NumericFailure(_) | Error::Verification { .. } => 3,
            Error::Io(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
