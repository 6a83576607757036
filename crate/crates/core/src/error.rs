use alloc::string::String;
use core::fmt;

/// Errors reported by the library.
///
/// Precondition failures are separated from `Falsified`, which signals that a
/// checked statement turned out false on a concrete instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    InvalidSurface(String),
    ComplexityTooLow { omega: i64 },
    InvalidArc(String),
    InvalidMultiarc(String),
    SurfaceMismatch(String),
    UnsupportedBackend(&'static str),
    NotFlippable(String),
    KOutOfRange { k: usize, omega: i64 },
    NotInGraph(String),
    NotAdjacent(String),
    IncompleteGraph(&'static str),
    BoundExhausted(String),
    GeodesicOverflow { cap: usize },
    SizeGuard { what: &'static str, limit: usize },
    Precondition(String),
    Falsified(String),
    Internal(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidSurface(m) => write!(f, "invalid surface: {m}"),
            Error::ComplexityTooLow { omega } => {
                write!(f, "surface complexity {omega} is below 1")
            }
            Error::InvalidArc(m) => write!(f, "invalid arc: {m}"),
            Error::InvalidMultiarc(m) => write!(f, "invalid multiarc: {m}"),
            Error::SurfaceMismatch(m) => write!(f, "surface mismatch: {m}"),
            Error::UnsupportedBackend(m) => write!(f, "unsupported on this backend: {m}"),
            Error::NotFlippable(m) => write!(f, "arc is not flippable: {m}"),
            Error::KOutOfRange { k, omega } => {
                write!(f, "k = {k} is outside 1..={omega}")
            }
            Error::NotInGraph(m) => write!(f, "not a vertex of the graph: {m}"),
            Error::NotAdjacent(m) => write!(f, "not adjacent: {m}"),
            Error::IncompleteGraph(m) => write!(f, "operation needs a complete graph: {m}"),
            Error::BoundExhausted(m) => write!(f, "search bound exhausted: {m}"),
            Error::GeodesicOverflow { cap } => {
                write!(f, "more than {cap} geodesics")
            }
            Error::SizeGuard { what, limit } => {
                write!(f, "{what} exceeds the size guard {limit}")
            }
            Error::Precondition(m) => write!(f, "precondition failed: {m}"),
            Error::Falsified(m) => write!(f, "check falsified: {m}"),
            Error::Internal(m) => write!(f, "internal inconsistency: {m}"),
        }
    }
}

impl core::error::Error for Error {}
