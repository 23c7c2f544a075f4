use thiserror::Error;

/// Everything that can go wrong while setting up or evaluating a rule.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("wave number must exceed 1, got {0}")]
    WaveNumberTooSmall(f64),

    #[error("singularity index must lie in (-1, 1), got {0}")]
    SingularityIndexOutOfRange(f64),

    #[error("amplitude is not finite at 0 but no singularity was declared")]
    AmplitudeNotFiniteAtZero,

    #[error("oscillator is not monotone: g' changes sign near x = {at}")]
    NonMonotoneOscillator { at: f64 },

    #[error("oscillator declared {declared} but g' has the opposite sign")]
    DirectionMismatch { declared: &'static str },

    #[error("g' disagrees with a finite difference of g at x = {at} (g' = {derivative}, fd = {finite_difference})")]
    InconsistentDerivative {
        at: f64,
        derivative: f64,
        finite_difference: f64,
    },

    #[error("declared stationary order r = {declared} is inconsistent with |g'(x)|/x^r near 0")]
    StationaryOrderMismatch { declared: u32 },

    #[error("g^(r+1)/(r+1)! has minimum {0} <= 0; stationary point assumption violated")]
    DegenerateStationaryPoint(f64),

    #[error("stationary point in oscillatory panel: g'({at}) = 0")]
    StationaryPointInPanel { at: f64 },

    #[error("rule requires a non-singular amplitude")]
    SingularAmplitude,

    #[error("rule requires an oscillator without a stationary point (r = 0), got r = {0}")]
    StationaryOscillator(u32),

    #[error("polynomial degree {0} exceeds the moment table cap of {cap}", cap = crate::moments::MAX_DEGREE)]
    DegreeTooLarge(usize),

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("Newton iteration for Legendre nodes did not converge (m = {0})")]
    GaussNotConverged(usize),

    #[error("brute-force reference did not converge: last iterates {last:?} and {previous:?}")]
    OracleNotConverged {
        last: (f64, f64),
        previous: (f64, f64),
    },

    #[error("no reference value available: {0}")]
    NoReference(String),
}

pub type Result<T> = std::result::Result<T, QuadError>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> QuadError {
    QuadError::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
