use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("unsupported parameters: {0}")]
    Unsupported(String),
    #[error("no convergence: {0}")]
    Convergence(String),
    #[error("precision exhausted: {0}")]
    Precision(String),
    #[error("recurrence coefficient d1 vanishes at k={k}, n={n}")]
    Degenerate { k: usize, n: i64 },
    #[error("sampler: {0}")]
    Sampler(String),
}

pub type Result<T> = std::result::Result<T, Error>;
