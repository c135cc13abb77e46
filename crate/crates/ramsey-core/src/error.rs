use thiserror::Error;

/// Errors shared across the toolkit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ground-set size {0} outside supported range 1..=24")]
    GroundSize(usize),

    #[error("subset bits {bits:#x} do not fit a ground set of size {n}")]
    BadSubset { bits: u32, n: usize },

    #[error("operands belong to different ground sets ({0} vs {1})")]
    HostMismatch(usize, usize),

    #[error("parts do not partition the ground set: x={x:#x} y={y:#x} over [{n}]")]
    BadPartition { x: u32, y: u32, n: usize },

    #[error("pattern has {0} elements, over the cap of {1}")]
    PatternTooLarge(usize, usize),

    #[error("not a valid poset: {0}")]
    InvalidPoset(String),

    #[error("not an embedding: {0}")]
    NotAnEmbedding(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("coloring has a blue Λ on vertices {0:#x} {1:#x} {2:#x}")]
    BlueLambda(u32, u32, u32),

    #[error(
        "resampling budget exhausted after {passes} passes; \
         last violating ordered pair Y1={y1:#x} Y2={y2:#x}"
    )]
    BudgetExhausted { passes: usize, y1: u32, y2: u32 },

    #[error("instance too large: {0}")]
    CapExceeded(String),

    #[error("internal invariant failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
