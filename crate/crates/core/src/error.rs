use crate::jordan::Descriptor;
use crate::scalar::Level;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("scalar level mismatch: {left:?} vs {right:?}")]
    LevelMismatch { left: Level, right: Level },

    #[error("expected {expected} coordinates for level {level:?}, got {got}")]
    CoordinateCount {
        level: Level,
        expected: usize,
        got: usize,
    },

    #[error("invalid algebra descriptor: {0}")]
    InvalidDescriptor(String),

    #[error("algebra descriptor mismatch: {left} vs {right}")]
    DescriptorMismatch { left: Descriptor, right: Descriptor },

    #[error("element is not Hermitian (residual {residual:e})")]
    NotHermitian { residual: f64 },

    #[error("element is not idempotent (residual {residual:e})")]
    NotIdempotent { residual: f64 },

    #[error("state is not a positive trace-one element: {0}")]
    InvalidState(String),

    #[error("events are not mutually orthogonal (residual {residual:e})")]
    NotOrthogonal { residual: f64 },

    #[error("conditioning on an event of probability {probability:e}")]
    NullConditioning { probability: f64 },

    #[error("rank {rank} out of range for {desc}")]
    InvalidRank { rank: usize, desc: Descriptor },

    #[error("random draw stayed degenerate after {0} retries")]
    DegenerateDraw(usize),

    #[error("eigendecomposition failed: {0}")]
    Spectral(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
