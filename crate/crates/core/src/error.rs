use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("inconsistent system")]
    InconsistentSystem,
    #[error("moduli not pairwise coprime")]
    NotCoprime,
    #[error("log of zero")]
    LogOfZero,
    #[error("undefined: 0^0")]
    Undefined,
    #[error("target too large; use tower generation")]
    TargetTooLarge,
    #[error("not a root solution")]
    NotRootSolution,
    #[error("cube sum {actual} does not match target {target}")]
    CubeSumMismatch { actual: String, target: String },
    #[error("use first_found mode (exhaustive search is capped at length {cap})")]
    UseFirstFound { cap: usize },
    #[error("covering is not complete and effective")]
    NotCompleteCovering,
    #[error("no covering found for length {0}")]
    NoCoveringFound(usize),
    #[error("orbit hits boundary at index {0}")]
    OrbitHitsBoundary(u64),
    #[error("precision ceiling of {0} bits exceeded")]
    PrecisionCeiling(u32),
    #[error("{0}")]
    InvalidInput(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
