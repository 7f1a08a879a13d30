use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite parameter ({0})")]
    NonFinite(&'static str),

    #[error("scale must be strictly positive, got {0}")]
    NonPositiveScale(f64),

    #[error("natural parameter needs t2 < 0, got t2 = {0}")]
    NaturalDomain(f64),

    #[error("dual parameter needs e2 - e1^2 > 0, got {0}")]
    DualDomain(f64),

    #[error("argument must be non-negative, got {0}")]
    NegativeArgument(f64),

    #[error("point ({0}, {1}) lies outside the model domain")]
    OutOfDomain(f64, f64),

    #[error("coincident points")]
    CoincidentPoints,

    #[error("identical spheres at indices {0} and {1}")]
    DuplicateSphere(usize, usize),

    #[error("duplicate generator at indices {0} and {1}")]
    DuplicateGenerator(usize, usize),

    #[error("input is empty")]
    EmptyInput,

    #[error("alpha = {0} is not allowed here (use kl for alpha in {{0, 1}})")]
    InvalidAlpha(f64),

    #[error("quadrature did not converge: estimate {value} with error {error} after {evaluations} evaluations")]
    QuadratureNotConverged {
        value: f64,
        error: f64,
        evaluations: usize,
    },

    #[error("at least {needed} samples required, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("samples have zero interquartile range")]
    ZeroSpread,

    #[error("operation requires a hyperbolic diagram, got the reverse flat (Euclidean) diagram")]
    NotHyperbolic,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
