use thiserror::Error;

/// Errors raised by the numeric constructions and the figure/report layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}({angle}) is within {distance:e} of a pole (guard {guard:e})")]
    PoleProximity {
        function: &'static str,
        angle: f64,
        distance: f64,
        guard: f64,
    },
    #[error("{name} must be positive, got {value}")]
    NonPositiveInput { name: &'static str, value: f64 },
    #[error("degenerate sequence: b = {b} does not exceed a = {a}")]
    DegenerateSequence { a: f64, b: f64 },
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported figure: {0}")]
    UnsupportedFigure(String),
    #[error("invalid precision: {0}")]
    InvalidPrecision(String),
    #[error("malformed report: {0}")]
    MalformedReport(String),
}

pub type Result<T> = std::result::Result<T, Error>;
