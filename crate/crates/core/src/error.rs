//! Error type shared by all modules.

use core::fmt;

/// Errors reported by the forward model and analysis operations.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A physical precondition was violated (negative field, zero duration, ...).
    Domain(&'static str),
    /// A parameter set failed its invariants.
    InvalidParams(&'static str),
    /// The requested feature runs off the edge of the scan curve.
    UnboundedFeature,
    /// The requested optical response would need a contrast above 1.
    UnreachableResponse,
    /// Dual-frequency operation with equal carrier frequencies.
    DegenerateFrequencies,
    /// Coarse and fine phase reconstructions disagree by more than half a fringe.
    AmbiguityResolution {
        /// Disagreement between the coarse and fine distance estimates, m.
        residual_m: f64,
    },
    /// A time series failed its invariants or is too short for the request.
    InvalidSeries(&'static str),
    /// An averaging time is not an integer multiple of the sample interval,
    /// or leaves too few samples.
    InvalidTau {
        /// The offending averaging time, s.
        tau_s: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::InvalidParams(msg) => write!(f, "invalid parameters: {msg}"),
            Error::UnboundedFeature => write!(f, "unbounded feature: no half-maximum crossing inside the curve"),
            Error::UnreachableResponse => write!(f, "unreachable response: required contrast exceeds 1"),
            Error::DegenerateFrequencies => write!(f, "degenerate carrier frequencies"),
            Error::AmbiguityResolution { residual_m } => {
                write!(f, "ambiguity resolution failed: residual {residual_m:e} m above half a fine fringe")
            }
            Error::InvalidSeries(msg) => write!(f, "invalid time series: {msg}"),
            Error::InvalidTau { tau_s } => write!(f, "invalid averaging time {tau_s:e} s"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
