use std::fmt;

/// Errors shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Alphabet size outside the supported range.
    InvalidAlphabet(u32),
    /// An operation required a finite-field context but got a plain mod-q ring.
    ContextKind(&'static str),
    /// Multiplicative inverse of zero.
    DivisionByZero,
    /// A parameter validation failed.
    Parameter(String),
    /// Parameters outside the range a construction supports.
    UnsupportedRange(String),
    /// A parity-check matrix with linearly dependent rows.
    RankDeficient,
    /// Brute-force minimum distance disagrees with the claimed distance.
    ClaimedDistance { claimed: u32, actual: u32 },
    /// The defect pattern exceeds what the codec can mask.
    CapabilityExceeded(String),
    /// A stuck position hit an all-zero matrix column; no shift can fix it.
    UnmaskableColumn(usize),
    /// The pattern cannot be masked with the given matrix.
    UnmaskablePattern,
    /// An instance beyond the brute-force guards.
    TooLarge(String),
    /// Malformed text input (matrix, word or manifest files).
    Parse(String),
    /// An internal invariant that the preconditions should have ruled out.
    Internal(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidAlphabet(q) => write!(f, "invalid alphabet size q={q} (need 2 <= q <= 65536)"),
            Error::ContextKind(op) => write!(f, "{op} requires a finite-field alphabet"),
            Error::DivisionByZero => write!(f, "division by zero"),
            Error::Parameter(msg) => write!(f, "invalid parameter: {msg}"),
            Error::UnsupportedRange(msg) => write!(f, "unsupported range: {msg}"),
            Error::RankDeficient => write!(f, "matrix rows are linearly dependent"),
            Error::ClaimedDistance { claimed, actual } => {
                write!(f, "claimed minimum distance {claimed} but brute force found {actual}")
            }
            Error::CapabilityExceeded(msg) => write!(f, "masking capability exceeded: {msg}"),
            Error::UnmaskableColumn(j) => write!(f, "column {j} is all-zero and cannot be masked"),
            Error::UnmaskablePattern => write!(f, "pattern cannot be masked"),
            Error::TooLarge(msg) => write!(f, "instance too large: {msg}"),
            Error::Parse(msg) => write!(f, "parse error: {msg}"),
            Error::Internal(msg) => write!(f, "internal invariant violation: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
