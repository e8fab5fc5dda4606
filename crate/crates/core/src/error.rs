use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("cannot compare a valued tuple with a closed point")]
    InvalidComparison,
    #[error("height mismatch: expected {expected}, got {found}")]
    HeightMismatch { expected: u64, found: u64 },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("one-parameter subgroup {0:?} has no limit on this fibre")]
    NoLimit(Vec<i64>),
    #[error("invalid local scheme: {0}")]
    InvalidLocalScheme(String),
    #[error("level {level} carries no support point")]
    CriterionViolated { level: usize },
    #[error("refusing brute force: {0}")]
    RefuseBruteForce(String),
    #[error("limit subdivision {fine:?} (height {fine_height}) does not refine {coarse:?} (height {coarse_height})")]
    TropicalIncompatibility {
        fine: Vec<u64>,
        fine_height: u64,
        coarse: Vec<u64>,
        coarse_height: u64,
    },
    #[error("points sharing a component drift differently; refined valuations are required")]
    NeedsRefinedInput,
}

pub type Result<T> = std::result::Result<T, Error>;
