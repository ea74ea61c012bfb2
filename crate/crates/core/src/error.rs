use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// `n` and `t` must both be positive.
    #[error("invalid shape n={n}, t={t}: both must be positive")]
    InvalidShape { n: i64, t: i64 },

    #[error("argument out of range: {0}")]
    OutOfRange(String),

    #[error("matrix of size {0} is not of even size")]
    OddSize(usize),

    /// 1-based position of the first entry violating skew-symmetry.
    #[error("matrix is not alternating at entry ({row}, {col}): {detail}")]
    NotAlternating {
        row: usize,
        col: usize,
        detail: String,
    },

    #[error("malformed matrix: {0}")]
    MalformedMatrix(String),

    #[error("resource budget exceeded: {0}")]
    Budget(String),

    #[error("no generic instance found after {attempts} attempts (best codim {best_codim}, need {needed})")]
    Genericity {
        attempts: usize,
        best_codim: usize,
        needed: usize,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
