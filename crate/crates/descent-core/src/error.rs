use thiserror::Error;

/// Crate-wide error type.  Every fallible public operation returns one of
/// these; internal invariant violations panic instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("zero element has no class or valuation")]
    ZeroInput,

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("characteristic mismatch or unsupported characteristic: {0}")]
    BadCharacteristic(String),

    #[error("elements live over different fields ({0} vs {1})")]
    FieldMismatch(String, String),

    #[error("class moduli differ: {0} vs {1}")]
    ModulusMismatch(u32, u32),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("curve is singular (discriminant vanishes)")]
    SingularCurve,

    #[error("point does not lie on the curve")]
    PointNotOnCurve,

    #[error("functions are attached to different curves")]
    CurveMismatch,

    #[error("line through the points is vertical")]
    VerticalSlope,

    #[error("evaluation hits a pole")]
    PoleAtPoint,

    #[error("point at infinity is not an admissible argument here")]
    InfinitePoint,

    #[error("point does not have exact order {0}")]
    NotTorsion(u32),

    #[error("no torsion family registered for N = {0}")]
    UnsupportedN(u32),

    #[error("squarefree split hit an inseparable block in characteristic {0}")]
    InseparableInput(u64),

    #[error("integer factorization gave up: cofactor {0} exceeds the configured bound")]
    FactorizationTooHard(String),

    #[error("specialized curve is singular at this parameter value")]
    SingularSpecialization,

    #[error("a curve coefficient has a pole at this parameter value")]
    PoleInCoefficients,

    #[error("real place only constrains even N")]
    RealPlaceOddN,

    #[error("place conditions violated: {}", .0.join("; "))]
    ConditionViolated(Vec<String>),

    #[error("search budget exhausted after {0} candidates")]
    SearchExhausted(u32),

    #[error("divisor certificate failed: norm of the Miller function is not c*(x - x0)^N")]
    CertificateFailed,
}

pub type Result<T> = std::result::Result<T, Error>;
