use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed rational {0:?}: expected p/q with q > 0")]
    ParseRational(String),

    #[error("the zero vector has no Lemma 1 data")]
    ZeroVector,

    #[error("vector ({0}) is congruent to a half-period")]
    HalfPeriod(String),

    #[error("matrix [[{a}, {b}], [{c}, {d}]] is not in Gamma[2]")]
    NotGamma2 { a: i64, b: i64, c: i64, d: i64 },

    #[error("no Gamma[2] matrix merges the standard vectors for even N = {0}")]
    EvenDenominator(i64),

    #[error("denominator {0} exceeds the orbit enumeration cap")]
    DenominatorTooLarge(i64),

    #[error("Im(tau) = {imag} is below the precision floor {floor}")]
    PrecisionLoss { imag: f64, floor: f64 },

    #[error("argument lies within {distance:e} of a lattice point")]
    PoleProximity { distance: f64 },

    #[error("denominator g(y, t) vanishes (|g| = {0:e})")]
    ZeroDenominator(f64),

    #[error("polynomial is not a perfect square")]
    NotASquare,

    #[error("polynomial division is not exact")]
    InexactDivision,

    #[error("singular point: |dP/dy| = {0:e}")]
    SingularPoint(f64),

    #[error("point excluded from the Painleve VI domain: {0}")]
    ExcludedPoint(&'static str),

    #[error("every sample was skipped")]
    NoValidSamples,

    #[error("malformed polynomial text: {0}")]
    ParsePoly(String),

    #[error("unknown curve {0:?}")]
    UnknownCurve(String),
}

pub type Result<T> = std::result::Result<T, Error>;
