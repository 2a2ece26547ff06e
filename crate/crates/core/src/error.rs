use alloc::string::String;

use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parameter `{name}` = {value} is outside its domain ({expected})")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("power allocation ratio {0} must lie in (0, 1)")]
    InvalidTheta(f64),

    #[error("power splitting ratio {0} must lie in [0, 1]")]
    InvalidRho(f64),

    #[error("integration bounds are reversed: a = {a} > b = {b}")]
    ReversedInterval { a: f64, b: f64 },

    #[error("argument {value} is outside the domain of {function}")]
    Domain { function: &'static str, value: f64 },

    #[error("internal consistency check failed: {0}")]
    Consistency(&'static str),

    #[error("diversity grid needs at least 3 ascending points, got {0}")]
    GridTooSmall(usize),

    #[error("outage probability is {value} at grid point {snr_db} dB; cannot take its logarithm")]
    NonPositiveOutage { snr_db: f64, value: f64 },

    #[error("scheme {0} has no closed-form outage expression")]
    NoClosedForm(&'static str),

    #[error("relative error is undefined for a zero simulation result")]
    ZeroSimulation,

    #[error("circuit sensitivity is not configured")]
    MissingSensitivity,

    #[error("unknown scheme id `{0}`")]
    UnknownScheme(String),

    #[error("invalid Monte Carlo configuration: {0}")]
    InvalidMcConfig(&'static str),
}
