use std::fmt;

/// Errors reported by the distribution, sampling and study routines.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// The face count must satisfy 1 <= n <= 10^15.
    InvalidFaceCount { n: u64 },
    /// A full (untruncated) pmf table was requested for an n that is too
    /// large to materialize.
    FullTableTooLarge { n: u64, limit: u64 },
    /// The truncation threshold must lie in [0, 1).
    InvalidEpsilon { epsilon: f64 },
    /// The index k lies outside the support {1, ..., n}.
    OutOfSupport { k: u64, n: u64 },
    /// Exact rational evaluation is limited to small n.
    TooLargeForExact { n: u64, limit: u64 },
    /// Brute-force enumeration walks n^(n-1) paths and is limited to small n.
    TooLargeForEnumeration { n: u64, limit: u64 },
    /// A grid exponent exceeds the cap of the requested study operation.
    ExponentTooLarge { exponent: u32, max: u32 },
    /// Grid exponents must be nonempty and strictly increasing.
    InvalidGrid { reason: &'static str },
    /// A regression needs at least two points.
    TooFewPoints { got: usize },
    /// All regression abscissae coincide; the slope is undetermined.
    DegenerateFit,
    /// A power-law fit requires strictly positive ordinate values.
    NonpositiveDelta { n: u64 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidFaceCount { n } => {
                write!(f, "face count {n} outside the supported range 1..=10^15")
            }
            Error::FullTableTooLarge { n, limit } => {
                write!(f, "full pmf table for n = {n} exceeds the limit n <= {limit}; pass a positive epsilon")
            }
            Error::InvalidEpsilon { epsilon } => {
                write!(f, "truncation threshold {epsilon} outside [0, 1)")
            }
            Error::OutOfSupport { k, n } => {
                write!(f, "k = {k} outside the support 1..={n}")
            }
            Error::TooLargeForExact { n, limit } => {
                write!(f, "exact rational evaluation limited to n <= {limit}, got {n}")
            }
            Error::TooLargeForEnumeration { n, limit } => {
                write!(f, "brute-force enumeration limited to n <= {limit}, got {n}")
            }
            Error::ExponentTooLarge { exponent, max } => {
                write!(f, "grid exponent {exponent} exceeds the cap {max} for this operation")
            }
            Error::InvalidGrid { reason } => write!(f, "invalid grid: {reason}"),
            Error::TooFewPoints { got } => {
                write!(f, "regression needs at least 2 points, got {got}")
            }
            Error::DegenerateFit => write!(f, "all abscissae equal; slope undetermined"),
            Error::NonpositiveDelta { n } => {
                write!(f, "nonpositive value at n = {n}; log-log fit undefined")
            }
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
