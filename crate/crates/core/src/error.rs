use thiserror::Error;

/// Errors raised by the algebra, polynomial and signature routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("alphabet dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("letter {letter} outside alphabet 1..={dim}")]
    LetterOutOfRange { letter: usize, dim: usize },

    #[error("alphabet dimension must be in 1..=255, got {0}")]
    InvalidDimension(usize),

    #[error("{0} has a nonzero empty-word component")]
    EmptyWordComponent(&'static str),

    #[error("variable count mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },

    #[error("variable index {index} outside 1..={nvars}")]
    VariableOutOfRange { index: usize, nvars: usize },

    #[error("polynomial map does not vanish at the origin; shift it to the path start first")]
    NotVanishingAtOrigin,

    #[error("polynomial map is not homogeneous: words of M_p(w) would not share one length")]
    NotHomogeneous,

    #[error("insufficient truncation level: have {have}, need {need}")]
    TruncationShortfall { have: usize, need: usize },

    #[error("path must start at the origin")]
    PathNotAtOrigin,

    #[error("path has no segments")]
    EmptyPath,

    #[error("interval length must be positive")]
    NonPositiveLength,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
