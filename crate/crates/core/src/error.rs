use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter is outside the domain where the formulas are defined.
    #[error("invalid parameter {name} = {value}: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("mesh parameter below Nyquist limit: {name} = {value} (must exceed 2)")]
    BelowNyquist { name: &'static str, value: f64 },

    #[error("singular interface configuration: reflection denominator vanishes")]
    SingularInterface,

    /// The time-domain experiment cannot produce a trustworthy number,
    /// typically because wave packets overlap at a probe.
    #[error("measurement invalid: {0}")]
    MeasurementInvalid(String),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            reason,
        }
    }
}
