use thiserror::Error;

/// Errors raised by evaluations in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the requested operation.
    #[error("domain error in {op}: {msg}")]
    Domain { op: &'static str, msg: String },

    /// A series or iteration failed to reach its tolerance within budget.
    #[error("{op} did not converge: {msg}")]
    NonConvergence { op: &'static str, msg: String },

    /// The hypergeometric parameter family is not implemented.
    #[error("unsupported 2F1 family (a={a}, b={b}, c={c}, z={z})")]
    UnsupportedFamily { a: f64, b: f64, c: f64, z: f64 },

    /// An integrand or intermediate produced a NaN or infinity.
    #[error("non-finite value in {op} at {at}")]
    NonFinite { op: &'static str, at: f64 },

    /// Invalid quadrature configuration or parameter.
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(op: &'static str, msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain {
        op,
        msg: msg.into(),
    })
}
