//! Error type shared by every module.

use alloc::string::String;

/// Domain errors. Each variant names the violated precondition.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid root tuple: {0}")]
    InvalidTuple(String),
    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),
    #[error("roots are not pairwise distinct")]
    NotDistinctRoots,
    #[error("polynomial has non-real roots")]
    ComplexRoots,
    #[error("inputs are linearly dependent")]
    DegenerateInput,
    #[error("generators are not strictly interlaced")]
    NotInterlaced,
    #[error("invalid ambient degree: {0}")]
    InvalidAmbient(String),
    #[error("shift {m} is not below the root separation {sep}")]
    SepTooSmall { m: f64, sep: f64 },
    #[error("search budget exceeded: {0}")]
    SearchBudgetExceeded(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("ambient mismatch: expected {expected}, found {found}")]
    AmbientMismatch { expected: usize, found: usize },
    #[error("vector is not in the kernel of the charge")]
    NotInKernel,
    #[error("vector is annihilated by the whole line")]
    InKernelOfLine,
    #[error("alpha search failed: {0}")]
    AlphaSearchFailed(String),
    #[error("quadratic form is singular")]
    SingularForm,
    #[error("quadratic form has signature ({pos},{neg},{zero}), expected ({want_pos},{want_neg},0)")]
    WrongSignature {
        pos: usize,
        neg: usize,
        zero: usize,
        want_pos: usize,
        want_neg: usize,
    },
    #[error("assumption violated: {0}")]
    AssumptionViolated(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("index {index} out of range for ambient {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("lattice mismatch: {0}")]
    LatticeMismatch(String),
    #[error("characters are linearly dependent")]
    DependentCharacters,
    #[error("separation violated at stage {stage}: need sep > {m}, found {sep}")]
    SepViolation { stage: usize, m: f64, sep: f64 },
    #[error("decomposition failed: {0}")]
    DecompositionFailed(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidTuple(_) => "InvalidTuple",
            Error::InvalidPolynomial(_) => "InvalidPolynomial",
            Error::NotDistinctRoots => "NotDistinctRoots",
            Error::ComplexRoots => "ComplexRoots",
            Error::DegenerateInput => "DegenerateInput",
            Error::NotInterlaced => "NotInterlaced",
            Error::InvalidAmbient(_) => "InvalidAmbient",
            Error::SepTooSmall { .. } => "SepTooSmall",
            Error::SearchBudgetExceeded(_) => "SearchBudgetExceeded",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::AmbientMismatch { .. } => "AmbientMismatch",
            Error::NotInKernel => "NotInKernel",
            Error::InKernelOfLine => "InKernelOfLine",
            Error::AlphaSearchFailed(_) => "AlphaSearchFailed",
            Error::SingularForm => "SingularForm",
            Error::WrongSignature { .. } => "WrongSignature",
            Error::AssumptionViolated(_) => "AssumptionViolated",
            Error::InvalidParams(_) => "InvalidParams",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::LatticeMismatch(_) => "LatticeMismatch",
            Error::DependentCharacters => "DependentCharacters",
            Error::SepViolation { .. } => "SepViolation",
            Error::DecompositionFailed(_) => "DecompositionFailed",
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
