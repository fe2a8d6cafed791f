//! Exact rational power thresholds, forbidden-length arithmetic, and the
//! finiteness classification of k-ary power-free languages.
//!
//! An exponent `a/b` with the strict flag off forbids every factor whose
//! exponent (length over period) is at least `a/b`; with the flag on, only
//! factors of exponent strictly greater than `a/b` are forbidden. The two
//! regimes are written `a/b` and `a/b+` throughout.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A rational exponent threshold, reduced to lowest terms, with a strictness
/// flag separating the `a/b`-free from the `a/b+`-free regime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalExponent {
    num: u64,
    den: u64,
    strict: bool,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl RationalExponent {
    /// Builds `num/den` (reduced) with the given strictness. Values below 1
    /// and zero denominators are rejected.
    pub fn new(num: u64, den: u64, strict: bool) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroDenominator(format!("{num}/{den}")));
        }
        if num < den {
            return Err(Error::ExponentBelowOne { num, den });
        }
        let g = gcd(num, den);
        Ok(Self {
            num: num / g,
            den: den / g,
            strict,
        })
    }

    pub fn numerator(&self) -> u64 {
        self.num
    }

    pub fn denominator(&self) -> u64 {
        self.den
    }

    /// True for the `a/b+` regime (only exponents strictly above `a/b`
    /// forbidden).
    pub fn is_strict(&self) -> bool {
        self.strict
    }

    /// The same threshold with the strict flag set.
    pub fn strictened(&self) -> Self {
        Self {
            strict: true,
            ..*self
        }
    }

    pub fn as_f64(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Least length at which a word of period `p` becomes a forbidden power:
    /// the smallest `n` with `n/p >= a/b` (strict: `n/p > a/b`), computed in
    /// exact integer arithmetic.
    pub fn forbidden_length(&self, p: usize) -> usize {
        assert!(p >= 1, "period must be positive");
        let ap = self.num as u128 * p as u128;
        let b = self.den as u128;
        let n = if self.strict {
            ap / b + 1
        } else {
            ap.div_ceil(b)
        };
        usize::try_from(n).expect("forbidden length exceeds the address space")
    }

    /// Exact comparison of the rational value against `num/den`, ignoring
    /// strictness.
    pub fn value_cmp(&self, num: u64, den: u64) -> Ordering {
        debug_assert!(den != 0);
        let lhs = self.num as u128 * den as u128;
        let rhs = num as u128 * self.den as u128;
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for RationalExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RationalExponent {
    /// Orders by rational value, with `a/b < a/b+ < anything larger`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.value_cmp(other.num, other.den)
            .then(self.strict.cmp(&other.strict))
    }
}

impl fmt::Display for RationalExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "{}/{}", self.num, self.den)?;
        }
        if self.strict {
            write!(f, "+")?;
        }
        Ok(())
    }
}

impl FromStr for RationalExponent {
    type Err = Error;

    /// Parses the canonical `INT[/INT][+]` notation, e.g. `2`, `7/3+`.
    fn from_str(text: &str) -> Result<Self> {
        let malformed = || Error::MalformedExponent(text.to_string());
        let (body, strict) = match text.strip_suffix('+') {
            Some(rest) => (rest, true),
            None => (text, false),
        };
        let (num_text, den_text) = match body.split_once('/') {
            Some((n, d)) => (n, d),
            None => (body, "1"),
        };
        if num_text.is_empty() || den_text.is_empty() {
            return Err(malformed());
        }
        if !num_text.bytes().all(|b| b.is_ascii_digit())
            || !den_text.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(malformed());
        }
        let num: u64 = num_text.parse().map_err(|_| malformed())?;
        let den: u64 = den_text.parse().map_err(|_| malformed())?;
        if den == 0 {
            return Err(Error::ZeroDenominator(text.to_string()));
        }
        RationalExponent::new(num, den, strict)
    }
}

/// Whether a k-ary power-free language is finite or infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Finite,
    Infinite,
}

/// Repetition threshold for `k` letters: `7/4` for `k = 3`, `7/5` for
/// `k = 4`, `k/(k-1)` otherwise. Avoidance is possible strictly above the
/// threshold only.
pub fn repetition_threshold(k: u8) -> (u64, u64) {
    match k {
        3 => (7, 4),
        4 => (7, 5),
        _ => (k as u64, k as u64 - 1),
    }
}

/// Classifies the k-ary language of words avoiding `e`-powers: infinite
/// exactly when `e` lies at or above the strict repetition threshold, i.e.
/// when `e` exceeds the threshold value, or equals it with the strict flag
/// set.
pub fn classify(k: u8, e: &RationalExponent) -> Result<Classification> {
    if k < 2 {
        return Err(Error::BadAlphabet(k));
    }
    let (tn, td) = repetition_threshold(k);
    let infinite = match e.value_cmp(tn, td) {
        Ordering::Greater => true,
        Ordering::Equal => e.is_strict(),
        Ordering::Less => false,
    };
    Ok(if infinite {
        Classification::Infinite
    } else {
        Classification::Finite
    })
}
