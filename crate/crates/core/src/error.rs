use thiserror::Error;

/// Everything that can go wrong while evaluating determinants, bounds and
/// certificates.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("the Riemann zeta function has a pole at s = 1")]
    PoleAt1,

    #[error("{0} is too close to an excluded point 1/2 - k")]
    PoleProximity(String),

    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("error bound unreachable: best total bound {achieved} at N = {n}")]
    BoundUnreachable { n: usize, achieved: String },

    #[error("sign of F at s = {s} could not be certified (last N = {n}, bound {bound}, F_N = {value})")]
    Undetermined {
        s: String,
        n: usize,
        bound: String,
        value: String,
    },

    #[error("no certified initial bracket: {0}")]
    BracketFailure(String),

    #[error("structure check failed: {0}")]
    PatternMismatch(String),

    #[error("ill-conditioned fit: {0}")]
    IllConditioned(String),

    #[error("matrix size N = {n} is too small to resolve the zero at s = -{m}; need N >= {required}")]
    InsufficientSize { m: u32, n: usize, required: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("cache error: {0}")]
    Cache(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    ///
    /// `2` marks computation-domain problems (bad input, poles, unreachable
    /// bounds), `3` marks failures to certify a result.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Undetermined { .. }
            | Error::BracketFailure(_)
            | Error::PatternMismatch(_)
            | Error::IllConditioned(_) => 3,
            _ => 2,
        }
    }

    /// Stable machine-readable tag for JSON error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::PoleAt1 => "pole_at_1",
            Error::PoleProximity(_) => "pole_proximity",
            Error::PrecisionExhausted(_) => "precision_exhausted",
            Error::Domain(_) => "domain",
            Error::BoundUnreachable { .. } => "bound_unreachable",
            Error::Undetermined { .. } => "undetermined",
            Error::BracketFailure(_) => "bracket_failure",
            Error::PatternMismatch(_) => "pattern_mismatch",
            Error::IllConditioned(_) => "ill_conditioned",
            Error::InsufficientSize { .. } => "insufficient_size",
            Error::Parse(_) => "parse",
            Error::Cache(_) => "cache",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
