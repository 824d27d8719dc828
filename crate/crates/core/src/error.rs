use thiserror::Error;

/// Errors produced by copula construction, quadrature and sampling.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("quadrature order must be at least 2, got {0}")]
    InvalidOrder(usize),

    #[error("invalid integration interval [{lo}, {hi}]")]
    InvalidInterval { lo: f64, hi: f64 },

    #[error("integrand is not finite ({value}) at {location}")]
    NonFinite { location: Location, value: f64 },

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("grid size must be at least {min}, got {got}")]
    GridTooSmall { min: usize, got: usize },

    #[error("Fourier coefficients violate the l1-product bound: {norm} > {bound}")]
    CoefficientNorm { norm: f64, bound: f64 },

    #[error("invalid Fourier coefficients: {0}")]
    InvalidCoefficients(String),

    #[error("Hermitian symmetry violated at index ({n}, {m})")]
    SymmetryViolation { n: i32, m: i32 },

    #[error("copula `{0}` has no closed form")]
    MissingClosedForm(String),

    #[error("copula `{0}` exposes no density")]
    MissingDensity(String),

    #[error("copula `{0}` exposes no conditional CDF")]
    MissingPartial(String),

    #[error("conditional CDF does not bracket w = {w} at u = {u}")]
    BracketingFailure { u: f64, w: f64 },

    #[error("sample is degenerate: {0}")]
    DegenerateSample(&'static str),

    #[error("invalid marginal specification `{0}`")]
    InvalidMarginal(String),
}

/// Point at which a numeric failure happened.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Location {
    Point1(f64),
    Point2(f64, f64),
}

impl std::fmt::Display for Location {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Location::Point1(x) => write!(f, "x = {x}"),
            Location::Point2(u, v) => write!(f, "(u, v) = ({u}, {v})"),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
