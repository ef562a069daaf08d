use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("variable mismatch: `{left}` vs `{right}`")]
    VariableMismatch { left: String, right: String },

    #[error("coefficient of exponent {index} requested but the series is only known below {precision}")]
    PrecisionExceeded { index: i64, precision: i64 },

    #[error("operation undefined on the zero series")]
    ZeroSeries,

    #[error("division by an exact-zero series")]
    DivisionByZero,

    #[error("inner series of a composition must have positive valuation, got {0}")]
    InnerValuation(i64),

    #[error("reversion needs valuation 1 with leading coefficient 1")]
    NotRevertible,

    #[error("root extraction needs constant term exactly 1")]
    NotUnit,

    #[error("ramification index must be positive")]
    ZeroRamification,

    #[error("substitution not representable: {0}")]
    NotRepresentable(String),

    #[error("insufficient precision: {0}")]
    InsufficientPrecision(String),

    #[error("constant map has no ramification structure")]
    ConstantMap,

    #[error("critical value missing from branch point list: {0}")]
    MissingBranchPoint(String),

    #[error("singular curve: discriminant vanishes")]
    SingularCurve,

    #[error("model is not integral at the uniformizer")]
    NonIntegralModel,

    #[error("no singular point on the reduction despite positive discriminant valuation")]
    NoSingularPoint,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, SeriesError>;
