//! Forbidden-power detection on growing words.
//!
//! Words are slices of letters `0..k`. Only letter equality matters here, so
//! no alphabet size is threaded through. The central fact used everywhere:
//! when a word is extended by one letter, any new forbidden power appears as
//! a suffix, and its suffix of exactly the forbidden length keeps the same
//! period — so scanning suffixes of the forbidden lengths for each period up
//! to the cap is a complete check.

use crate::exponent::RationalExponent;

/// True iff `p` is a period of `w`, i.e. `w[i] == w[i + p]` for all valid `i`.
pub fn has_period(w: &[u8], p: usize) -> bool {
    assert!(
        p >= 1 && p <= w.len(),
        "period {p} out of range for length {}",
        w.len()
    );
    (0..w.len() - p).all(|i| w[i] == w[i + p])
}

/// Precomputed forbidden-length thresholds for one (exponent, period cap)
/// pair; reused across the many suffix scans of a graph build.
#[derive(Debug, Clone)]
pub struct SuffixChecker {
    thresholds: Vec<usize>,
}

impl SuffixChecker {
    pub fn new(e: &RationalExponent, period_cap: usize) -> Self {
        assert!(period_cap >= 1, "period cap must be positive");
        let thresholds = (1..=period_cap).map(|p| e.forbidden_length(p)).collect();
        Self { thresholds }
    }

    pub fn period_cap(&self) -> usize {
        self.thresholds.len()
    }

    /// Smallest period `p <= cap` such that the suffix of `w` of the
    /// forbidden length for `p` exists and has period `p`. A hit certifies a
    /// factor of forbidden exponent with period at most `p`.
    pub fn forbidden_suffix(&self, w: &[u8]) -> Option<usize> {
        let len = w.len();
        for p in 1..=self.period_cap().min(len) {
            let need = self.thresholds[p - 1];
            if need > len {
                continue;
            }
            let tail = &w[len - need..];
            if (0..need - p).all(|i| tail[i] == tail[i + p]) {
                return Some(p);
            }
        }
        None
    }
}

/// Smallest period `p <= period_cap` whose forbidden power ends `w`, if any.
pub fn ends_with_forbidden_power(
    w: &[u8],
    e: &RationalExponent,
    period_cap: usize,
) -> Option<usize> {
    SuffixChecker::new(e, period_cap).forbidden_suffix(w)
}

/// True iff no factor of `w` is a forbidden power with period at most
/// `period_cap` (`None` means no cap, i.e. membership in the true power-free
/// language: a period inside `w` never exceeds `|w|`).
pub fn is_allowed(w: &[u8], e: &RationalExponent, period_cap: Option<usize>) -> bool {
    let cap = period_cap.unwrap_or(w.len()).max(1);
    let checker = SuffixChecker::new(e, cap);
    (1..=w.len()).all(|i| checker.forbidden_suffix(&w[..i]).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp(text: &str) -> RationalExponent {
        text.parse().unwrap()
    }

    #[test]
    fn period_predicate() {
        assert!(has_period(&[0, 1, 0, 1], 2));
        assert!(!has_period(&[0, 1, 0, 1], 3));
        assert!(has_period(&[0, 0, 0], 1));
        assert!(has_period(&[0, 1, 0, 1], 4)); // whole length is always a period
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn period_zero_rejected() {
        has_period(&[0, 1], 0);
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn period_beyond_length_rejected() {
        has_period(&[0, 1], 3);
    }

    #[test]
    fn forbidden_suffix_examples() {
        // 010010 ends with the square (010)(010): length 6 = forbidden
        // length of period 3 under exponent 2, and no smaller period fires.
        assert_eq!(
            ends_with_forbidden_power(&[0, 1, 0, 0, 1, 0], &exp("2"), 3),
            Some(3)
        );
        // aa has exponent exactly 2, which 2+ still allows
        assert_eq!(ends_with_forbidden_power(&[0, 0], &exp("2+"), 1), None);
        // aaa is the first forbidden power of period 1 under 2+
        assert_eq!(
            ends_with_forbidden_power(&[0, 0, 0], &exp("2+"), 1),
            Some(1)
        );
    }

    #[test]
    fn forbidden_suffix_reports_smallest_period() {
        // ...011011 ends with the square "11" as well as (011)^2; the
        // smallest period wins.
        assert_eq!(
            ends_with_forbidden_power(&[0, 1, 1, 0, 1, 1], &exp("2"), 3),
            Some(1)
        );
    }

    #[test]
    fn forbidden_suffix_respects_cap() {
        // square of period 3 is invisible when the cap stops at 2
        assert_eq!(
            ends_with_forbidden_power(&[0, 1, 0, 0, 1, 0], &exp("2"), 2),
            None
        );
    }

    #[test]
    fn allowance_examples() {
        assert!(!is_allowed(&[0, 1, 0, 0, 1, 0], &exp("2"), None)); // contains (010)^2
        assert!(is_allowed(&[0, 1, 0, 2, 0, 1, 0], &exp("2"), None)); // square-free
        assert!(!is_allowed(&[0, 0, 0], &exp("3"), Some(1)));
        assert!(is_allowed(&[0, 0], &exp("3"), Some(1)));
        assert!(is_allowed(&[], &exp("2"), None));
    }

    /// Reference check used by the completeness test: does `w` contain any
    /// factor of forbidden exponent with period at most `cap`, by direct
    /// enumeration of all factors and all periods?
    fn contains_forbidden_factor(w: &[u8], e: &RationalExponent, cap: usize) -> bool {
        for start in 0..w.len() {
            for end in start + 1..=w.len() {
                let f = &w[start..end];
                for p in 1..=cap.min(f.len()) {
                    if f.len() >= e.forbidden_length(p) && has_period(f, p) {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Walks the full k-ary tree of words up to `max_len`, checking that the
    /// incremental suffix scan agrees with brute-force factor enumeration at
    /// every extension.
    fn assert_suffix_scan_complete(k: u8, e: &RationalExponent, cap: usize, max_len: usize) {
        let checker = SuffixChecker::new(e, cap);
        let mut word: Vec<u8> = Vec::new();
        // stack of (depth, letter) to visit
        let mut stack: Vec<(usize, u8)> = (0..k).rev().map(|c| (0, c)).collect();
        while let Some((depth, c)) = stack.pop() {
            word.truncate(depth);
            word.push(c);
            let parent_bad = contains_forbidden_factor(&word[..depth], e, cap);
            let child_bad = contains_forbidden_factor(&word, e, cap);
            let suffix_hit = checker.forbidden_suffix(&word).is_some();
            assert_eq!(
                child_bad,
                parent_bad || suffix_hit,
                "completeness broken at word {word:?} (e={e}, cap={cap})"
            );
            if word.len() < max_len {
                for c in (0..k).rev() {
                    stack.push((word.len(), c));
                }
            }
        }
    }

    #[test]
    fn suffix_scan_is_complete_binary() {
        for text in ["2", "2+", "7/3", "3"] {
            for cap in 1..=4 {
                assert_suffix_scan_complete(2, &exp(text), cap, 11);
            }
        }
    }

    #[test]
    fn suffix_scan_is_complete_ternary() {
        for text in ["2", "7/3+", "3+"] {
            for cap in 1..=3 {
                assert_suffix_scan_complete(3, &exp(text), cap, 7);
            }
        }
    }

    #[test]
    fn larger_caps_allow_fewer_words() {
        // {w : allowed with cap m+1} is a subset of {w : allowed with cap m}:
        // a forbidden factor of period <= m is also one of period <= m+1.
        for text in ["2", "7/3+", "3"] {
            let e = exp(text);
            for k in 2..=3u8 {
                let mut word = Vec::new();
                let mut stack: Vec<(usize, u8)> = (0..k).rev().map(|c| (0, c)).collect();
                while let Some((depth, c)) = stack.pop() {
                    word.truncate(depth);
                    word.push(c);
                    for m in 1..=3usize {
                        if is_allowed(&word, &e, Some(m + 1)) {
                            assert!(is_allowed(&word, &e, Some(m)));
                        }
                    }
                    if word.len() < 9 {
                        for c in (0..k).rev() {
                            stack.push((word.len(), c));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn allowance_is_renaming_invariant() {
        use proptest::prelude::*;
        let mut runner = proptest::test_runner::TestRunner::default();
        let strategy = (
            proptest::collection::vec(0u8..3, 0..14),
            proptest::sample::select(vec![
                [0u8, 1, 2],
                [0, 2, 1],
                [1, 0, 2],
                [1, 2, 0],
                [2, 0, 1],
                [2, 1, 0],
            ]),
        );
        runner
            .run(&strategy, |(word, perm)| {
                let renamed: Vec<u8> = word.iter().map(|&c| perm[c as usize]).collect();
                for text in ["2", "7/3+", "3"] {
                    let e: RationalExponent = text.parse().unwrap();
                    for cap in [None, Some(1), Some(3)] {
                        prop_assert_eq!(is_allowed(&word, &e, cap), is_allowed(&renamed, &e, cap));
                    }
                }
                Ok(())
            })
            .unwrap();
    }
}
