use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    InvalidArgument(String),
    /// A series or product needed more than `max_terms` terms.
    NonConvergent { terms: usize },
    /// The result does not fit in an `f64`.
    Overflow,
    /// Bisection endpoints did not show the expected sign change.
    BracketFailure { lo: f64, hi: f64, f_lo: f64, f_hi: f64 },
    UnknownCheck(String),
    /// A catalog parameter is missing or outside the entry's domain.
    DomainViolation(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    /// True for errors caused by numerics rather than by the caller.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::NonConvergent { .. } | Error::Overflow | Error::BracketFailure { .. }
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(m) => write!(f, "invalid argument: {m}"),
            Error::NonConvergent { terms } => {
                write!(f, "series did not converge within {terms} terms")
            }
            Error::Overflow => f.write_str("result overflows f64"),
            Error::BracketFailure { lo, hi, f_lo, f_hi } => write!(
                f,
                "no sign change on [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}"
            ),
            Error::UnknownCheck(id) => write!(f, "unknown check id `{id}`"),
            Error::DomainViolation(m) => write!(f, "domain violation: {m}"),
        }
    }
}

impl core::error::Error for Error {}
