//! Task descriptions: one growth-rate computation per `TaskSpec`.

use crate::error::{Error, Result};
use crate::exponent::RationalExponent;

/// Parameters of one computation: alphabet size, exponent threshold, period
/// cap of the regular approximation, and resource knobs.
#[derive(Debug, Clone, PartialEq)]
pub struct TaskSpec {
    pub alphabet: u8,
    pub exponent: RationalExponent,
    /// Period cap `m`: forbidden powers with period at most `m` are excluded.
    pub period_cap: usize,
    /// Quotient states by alphabet renaming.
    pub symmetry: bool,
    /// Target enclosure width.
    pub precision: f64,
    /// Abort graph construction beyond this many states.
    pub state_cap: usize,
}

impl TaskSpec {
    pub const DEFAULT_PRECISION: f64 = 1e-9;
    pub const DEFAULT_STATE_CAP: usize = 1 << 27;

    /// A task with default knobs: precision `1e-9`, state cap `2^27`, and
    /// symmetry on for `k >= 3` (the renaming quotient saves a factor that
    /// grows with `k!`; for `k = 2` it rarely matters).
    pub fn new(alphabet: u8, exponent: RationalExponent, period_cap: usize) -> Result<Self> {
        if !(2..=36).contains(&alphabet) {
            return Err(Error::BadAlphabet(alphabet));
        }
        if period_cap == 0 {
            return Err(Error::BadPeriodCap);
        }
        Ok(Self {
            alphabet,
            exponent,
            period_cap,
            symmetry: alphabet >= 3,
            precision: Self::DEFAULT_PRECISION,
            state_cap: Self::DEFAULT_STATE_CAP,
        })
    }

    pub fn with_symmetry(mut self, on: bool) -> Self {
        self.symmetry = on;
        self
    }

    pub fn with_precision(mut self, precision: f64) -> Result<Self> {
        if !(precision > 0.0 && precision.is_finite()) {
            return Err(Error::BadPrecision(precision));
        }
        self.precision = precision;
        Ok(self)
    }

    pub fn with_state_cap(mut self, cap: usize) -> Result<Self> {
        if cap == 0 {
            return Err(Error::BadStateCap);
        }
        self.state_cap = cap;
        Ok(self)
    }

    /// The same task at a different period cap.
    pub fn at_period_cap(&self, period_cap: usize) -> Self {
        Self {
            period_cap,
            ..self.clone()
        }
    }

    /// Canonical `k/a/b/strict/m/sym` key identifying the language parameters
    /// (resource knobs excluded); used to address cached graphs.
    pub fn cache_key(&self) -> String {
        format!(
            "{}/{}/{}/{}/{}/{}",
            self.alphabet,
            self.exponent.numerator(),
            self.exponent.denominator(),
            u8::from(self.exponent.is_strict()),
            self.period_cap,
            u8::from(self.symmetry),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_follow_alphabet_size() {
        let e: RationalExponent = "3".parse().unwrap();
        assert!(!TaskSpec::new(2, e, 1).unwrap().symmetry);
        assert!(TaskSpec::new(3, e, 1).unwrap().symmetry);
        assert_eq!(TaskSpec::new(2, e, 1).unwrap().precision, 1e-9);
        assert_eq!(TaskSpec::new(2, e, 1).unwrap().state_cap, 1 << 27);
    }

    #[test]
    fn validation() {
        let e: RationalExponent = "3".parse().unwrap();
        assert!(matches!(TaskSpec::new(1, e, 1), Err(Error::BadAlphabet(1))));
        assert!(matches!(
            TaskSpec::new(37, e, 1),
            Err(Error::BadAlphabet(37))
        ));
        assert!(matches!(TaskSpec::new(2, e, 0), Err(Error::BadPeriodCap)));
        let t = TaskSpec::new(2, e, 1).unwrap();
        assert!(t.clone().with_precision(0.0).is_err());
        assert!(t.clone().with_precision(-1.0).is_err());
        assert!(t.clone().with_state_cap(0).is_err());
    }

    #[test]
    fn cache_keys_distinguish_strictness_and_symmetry() {
        let plain: RationalExponent = "2".parse().unwrap();
        let strict: RationalExponent = "2+".parse().unwrap();
        let a = TaskSpec::new(2, plain, 3).unwrap();
        let b = TaskSpec::new(2, strict, 3).unwrap();
        assert_ne!(a.cache_key(), b.cache_key());
        assert_ne!(a.cache_key(), a.clone().with_symmetry(true).cache_key());
        assert_eq!(a.cache_key(), "2/2/1/0/3/0");
    }
}
