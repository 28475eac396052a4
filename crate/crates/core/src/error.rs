use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rank must be at least 2, got {0}")]
    InvalidRank(u32),

    #[error("letter {letter} is out of range for rank {rank}")]
    InvalidLetter { letter: i64, rank: u32 },

    #[error("rank mismatch: {left} vs {right}")]
    RankMismatch { left: u32, right: u32 },

    #[error("shape mismatch: (N={left_rank}, k={left_depth}) vs (N={right_rank}, k={right_depth})")]
    ShapeMismatch { left_rank: u32, left_depth: usize, right_rank: u32, right_depth: usize },

    #[error("enumeration of {size} words exceeds the size guard ({limit}); pass the override flag to proceed")]
    GuardExceeded { size: u128, limit: u64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
