use thiserror::Error;

/// Errors raised by the analysis routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("point lies outside the polytope")]
    OutsideHull,

    #[error("polytope has no generators")]
    EmptyPolytope,

    #[error("vector is zero")]
    ZeroVector,

    #[error("cocharacter is not integral: {0}")]
    NotIntegral(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unknown component label `{0}`")]
    UnknownLabel(String),

    #[error("system of Hodge bundles is not abelian (blocks are not pairwise distinct)")]
    NonAbelian,

    #[error("combinatorial cap exceeded: {0}")]
    CapExceeded(String),

    #[error("input is not stable: {0}")]
    NotStable(String),

    #[error("ray slice of the sheared weight polytope is empty at stage {stage}")]
    RayEmpty { stage: usize },

    #[error("ray parameter did not increase at stage {stage}: {previous} -> {current}")]
    NonIncreasing {
        stage: usize,
        previous: String,
        current: String,
    },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("minimization failed after {iterations} iterations (gradient norm {gradient_norm:e})")]
    MinimizationFailure {
        iterations: usize,
        gradient_norm: f64,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
