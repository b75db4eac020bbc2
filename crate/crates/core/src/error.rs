use thiserror::Error;

use crate::numerics::{Scalar, Vector};
use crate::separation::HypothesisReport;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseScalarError {
    #[error("empty scalar literal")]
    Empty,
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed scalar literal {0:?}")]
    Malformed(String),
}

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    #[error("dimension {dim} exceeds the supported maximum {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("{count} generators exceed the per-piece maximum {max}")]
    TooManyGenerators { count: usize, max: usize },

    #[error("polyhedron is unbounded")]
    UnboundedPolyhedron,

    #[error("functional must be nonzero")]
    ZeroFunctional,

    #[error("ball vertex set is not symmetric: -{0:?} is missing")]
    NotSymmetric(Vector),

    #[error("origin is not an interior point of the ball")]
    OriginNotInterior,

    #[error("cone is not solid")]
    NotSolid,

    #[error("seminorm family is empty")]
    EmptyFamily,

    #[error("polygon order must be at least 2, got {0}")]
    BadOrder(usize),

    #[error("seminorm vanishes on the nonzero cone element {0:?}; only a seminorm-base exists")]
    NotNormlike(Vector),

    #[error("cone is not pointed: {0:?} lies in the lineality space")]
    NotPointed(Vector),

    #[error("nontriviality violated: {0}")]
    NontrivialityViolated(String),

    #[error("unsupported piece overlap: {0}")]
    UnsupportedOverlap(String),

    #[error("infimum over the base is {minimum}, attained at {argmin:?}; no positive infimum")]
    NoPositiveInfimum { minimum: Scalar, argmin: Vector },

    #[error("epsilon {epsilon} must lie in (0, {alpha}]")]
    BadEpsilon { epsilon: Scalar, alpha: Scalar },

    #[error("augmented functional is not in the augmented dual cone")]
    NotInAugmentedDual,

    #[error("hypotheses of the requested separation variant fail")]
    HypothesisFailed(Box<HypothesisReport>),

    #[error("parse error at {field}: {message}")]
    Parse { field: String, message: String },

    #[error("no acceptable instance after {0} attempts")]
    RejectionLimit(usize),

    #[error("internal certificate failure: {0}")]
    Certificate(String),
}

impl Error {
    pub fn parse(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            field: field.into(),
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
