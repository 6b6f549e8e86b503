use alloc::string::String;
use core::fmt;

/// Failures reported by the symbolic engines.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A precondition on an integer argument was violated.
    Domain(String),
    /// Two operands carry different truncations.
    TruncationMismatch,
    /// `log` of a series whose constant term is not 1.
    LogConstant,
    /// `exp`/`log` argument has a term that is not nilpotent in the truncated ring.
    NotNilpotent,
    /// Two independent routes disagreed; the payload names the lattice point.
    RouteMismatch(String),
    /// A Virasoro index outside the operator family.
    VirasoroRange(i64),
    /// The truncation is too small to certify any residual coefficient.
    TruncationTooSmall,
    /// The spectral curve series order is too low for the requested residue.
    SeriesOrder { needed: usize, available: usize },
    /// Partition function normalisation at t = 0 is wrong.
    Normalization(String),
    /// The exceptional pair (m, n) = (3g-3, 0) of the vanishing theorem.
    VanishingException { g: u32, m: u32 },
    /// (g, n) outside the stable range where the quantity is defined.
    Unstable { g: u32, n: u32 },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(s) => write!(f, "domain error: {s}"),
            Error::TruncationMismatch => write!(f, "operands have different truncations"),
            Error::LogConstant => write!(f, "log needs a series with constant term 1"),
            Error::NotNilpotent => write!(
                f,
                "exp/log argument must have positive t-degree and nonnegative hbar and s powers"
            ),
            Error::RouteMismatch(s) => write!(f, "independent routes disagree at {s}"),
            Error::VirasoroRange(m) => write!(f, "Virasoro index {m} outside the operator range"),
            Error::TruncationTooSmall => write!(f, "truncation too small to certify any order"),
            Error::SeriesOrder { needed, available } => write!(
                f,
                "spectral curve series order {available} is below the required {needed}"
            ),
            Error::Normalization(s) => write!(f, "normalisation mismatch: {s}"),
            Error::VanishingException { g, m } => write!(
                f,
                "(m, n) = ({m}, 0) with g = {g} is the exceptional pair (3g-3, 0): K_{m} does not vanish on M_{g}"
            ),
            Error::Unstable { g, n } => write!(f, "(g, n) = ({g}, {n}) is unstable"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
