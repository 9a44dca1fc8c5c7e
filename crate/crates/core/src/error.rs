use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("constructed inverse fails the residual check (residual {residual:e})")]
    InverseVerificationFailed { residual: f64 },

    #[error("vector is a point at infinity (weight {weight:e})")]
    PointAtInfinity { weight: f64 },

    #[error("vector is not null (quadrance {quadrance:e})")]
    NotNull { quadrance: f64 },

    #[error("motion is degenerate at parameter t = {t}")]
    SampleAtExceptionalParameter { t: f64 },

    #[error("not a motion polynomial: {reason}")]
    NotAMotionPolynomial { reason: String },

    #[error("quadrance polynomial is identically zero")]
    ZeroQuadrance,

    #[error("leading coefficient is not invertible")]
    NonInvertibleLeadingCoefficient,

    #[error("expected a polynomial of degree {expected}, got degree {actual}")]
    WrongDegree { expected: usize, actual: usize },

    #[error("odd number of real roots ({count}) in a quadrance polynomial")]
    OddRealRootCount { count: usize },

    #[error("root finding failed: {0}")]
    RootFinding(String),

    #[error("computed right root does not annihilate the polynomial (residual {residual:e})")]
    RootVerificationFailed { residual: f64 },

    #[error("irregular solution space has dimension {dim}, above the supported maximum of {max}")]
    DimensionTooLarge { dim: usize, max: usize },

    #[error("singular values straddle the rank tolerance: {singular_values:?}")]
    NumericalRankAmbiguity { singular_values: Vec<f64> },

    #[error("no real solution found after {restarts} restarts (best residual {best_residual:e})")]
    NoRealSolutionFound { restarts: usize, best_residual: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
