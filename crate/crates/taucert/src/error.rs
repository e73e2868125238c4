//! Error type shared by every module of the crate.

use thiserror::Error;

/// Errors raised by exact computations.
///
/// Each variant has a stable machine code (see [`Error::code`]) so that
/// callers, in particular the CLI, can assert on failure modes without
/// parsing messages.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("non-split denominator: irreducible factor of degree {degree} over Q(i)")]
    NonSplitDenominator { degree: usize },

    #[error("root search exceeded bounds: {0}")]
    RootSearchOverflow(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("truncation mismatch: left order {left}, right order {right}")]
    TruncationMismatch { left: usize, right: usize },

    #[error("precondition violation: {0}")]
    Precondition(String),

    #[error("shift parameter beta must be nonzero")]
    BetaZero,

    #[error("zero equation")]
    ZeroEquation,

    #[error("missing initial terms: need {needed}, got {got}")]
    MissingInitialTerms { needed: usize, got: usize },

    #[error("series solution underdetermined at order {order}")]
    Resonance { order: usize },

    #[error("singular parameter: {0}")]
    SingularParameter(String),

    #[error("unknown catalog entry: {0}")]
    UnknownEntry(String),

    #[error("comparison order {order} too small, need at least {needed}")]
    ComparisonOrderTooSmall { order: usize, needed: usize },

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("numeric domain error: {0}")]
    NumericDomain(String),
}

impl Error {
    /// Stable machine code for structured error output.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division-by-zero",
            Error::NonSplitDenominator { .. } => "non-split-denominator",
            Error::RootSearchOverflow(_) => "root-search-overflow",
            Error::DimensionMismatch(_) => "dimension-mismatch",
            Error::TruncationMismatch { .. } => "truncation-mismatch",
            Error::Precondition(_) => "precondition",
            Error::BetaZero => "beta-zero",
            Error::ZeroEquation => "zero-equation",
            Error::MissingInitialTerms { .. } => "missing-initial-terms",
            Error::Resonance { .. } => "resonance",
            Error::SingularParameter(_) => "singular-parameter",
            Error::UnknownEntry(_) => "unknown-entry",
            Error::ComparisonOrderTooSmall { .. } => "comparison-order-too-small",
            Error::InvalidProblem(_) => "invalid-problem",
            Error::Parse(_) => "parse-error",
            Error::NumericDomain(_) => "numeric-domain",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
