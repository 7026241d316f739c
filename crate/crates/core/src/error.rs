use thiserror::Error;

pub type Result<T> = std::result::Result<T, BpbError>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BpbError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("polytope vertex list is not centrally symmetric: {0}")]
    NonSymmetricPolytope(String),

    #[error("polytope vertices do not span the space")]
    DegeneratePolytope,

    #[error("supporting functional requested at the zero vector")]
    ZeroVector,

    #[error("resolution {found} is below the minimum {min}")]
    ResolutionTooSmall { found: usize, min: usize },

    #[error("dimension {0} exceeds the sampling limit of 4")]
    DimensionTooLarge(usize),

    #[error("parameter regime violated: {0}")]
    Regime(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no sampled pair satisfies the constraint: {0}")]
    EmptyConstraintSet(String),

    #[error("could not parse space spec: {0}")]
    Parse(String),

    #[error(
        "no norm-attaining pair meets both corrector bounds \
         (best point gap {point_gap:.6} vs {point_bound:.6}, \
         best functional gap {functional_gap:.6} vs {functional_bound:.6})"
    )]
    CorrectorFailed {
        point_gap: f64,
        point_bound: f64,
        functional_gap: f64,
        functional_bound: f64,
    },
}

impl BpbError {
    /// True for errors caused by parameters outside a formula's valid range.
    pub fn is_regime(&self) -> bool {
        matches!(self, BpbError::Regime(_))
    }
}
