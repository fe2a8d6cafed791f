//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed exponent `{0}`: expected INT[/INT][+]")]
    MalformedExponent(String),
    #[error("exponent `{0}` has a zero denominator")]
    ZeroDenominator(String),
    #[error("exponent {num}/{den} is below 1")]
    ExponentBelowOne { num: u64, den: u64 },
    #[error("alphabet size {0} unsupported: need 2 <= k <= 36")]
    BadAlphabet(u8),
    #[error("period cap must be at least 1")]
    BadPeriodCap,
    #[error("precision must be a positive finite number, got {0}")]
    BadPrecision(f64),
    #[error("state cap must be at least 1")]
    BadStateCap,
    #[error("state cap {cap} exceeded: at least {reached} states required")]
    StateCapExceeded { cap: usize, reached: usize },
    #[error("state words of {order} letters over {k} symbols exceed the packed label width")]
    LabelTooWide { k: u8, order: usize },
    #[error("enumeration guard tripped: more than {0} words visited")]
    CountGuardExceeded(u64),
    #[error("word length {n} is below the graph order {order}")]
    LengthBelowOrder { n: usize, order: usize },
    #[error("period-cap range {from}..{to} is empty")]
    EmptyRange { from: usize, to: usize },
    #[error("mismatched records: {0}")]
    MismatchedRecords(String),
    #[error("invalid serialized graph: {0}")]
    BadGraphText(String),
}
