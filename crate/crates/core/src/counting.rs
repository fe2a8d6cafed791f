//! Exact word counts: the brute-force enumerator, walk counts on factor
//! graphs, and the Fekete submultiplicativity check. All counts are exact
//! integers so that oracle comparisons are literal equality.

use num_bigint::BigUint;

use crate::checker::SuffixChecker;
use crate::error::{Error, Result};
use crate::exponent::RationalExponent;
use crate::graph::FactorGraph;

/// Word counts of one language, indexed by length starting at 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountSeries {
    pub alphabet: u8,
    pub exponent: RationalExponent,
    /// `None` means the true power-free language (no period cap).
    pub period_cap: Option<usize>,
    pub counts: Vec<BigUint>,
}

impl CountSeries {
    /// CSV serialization, one `n,count` row per length.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count\n");
        for (n, c) in self.counts.iter().enumerate() {
            out.push_str(&format!("{n},{c}\n"));
        }
        out
    }
}

/// Node budget for the enumerator.
pub const BRUTE_NODE_GUARD: u64 = 100_000_000;

/// Counts allowed words of each length up to `n_max` by depth-first search
/// over the k-ary tree, pruning at the first forbidden suffix. Only the
/// subtree under the first letter is walked; renaming symmetry multiplies it
/// back by `k`.
pub fn brute_count(
    k: u8,
    e: &RationalExponent,
    period_cap: Option<usize>,
    n_max: usize,
) -> Result<CountSeries> {
    assert!((2..=36).contains(&k), "alphabet size out of range");
    let cap = period_cap.unwrap_or(n_max).max(1);
    let checker = SuffixChecker::new(e, cap);

    let mut per_level = vec![0u64; n_max + 1];
    per_level[0] = 1;
    let mut visited = 0u64;
    if n_max >= 1 {
        let mut word: Vec<u8> = Vec::with_capacity(n_max);
        let mut stack: Vec<(usize, u8)> = vec![(0, 0)]; // first letter fixed to 0
        while let Some((depth, c)) = stack.pop() {
            word.truncate(depth);
            word.push(c);
            if checker.forbidden_suffix(&word).is_some() {
                continue;
            }
            visited += 1;
            if visited > BRUTE_NODE_GUARD {
                return Err(Error::CountGuardExceeded(BRUTE_NODE_GUARD));
            }
            per_level[word.len()] += 1;
            if word.len() < n_max {
                for c in (0..k).rev() {
                    stack.push((word.len(), c));
                }
            }
        }
    }

    let counts = per_level
        .iter()
        .enumerate()
        .map(|(n, &c)| {
            if n == 0 {
                BigUint::from(1u32)
            } else {
                BigUint::from(c) * BigUint::from(k)
            }
        })
        .collect();
    Ok(CountSeries {
        alphabet: k,
        exponent: *e,
        period_cap,
        counts,
    })
}

/// Number of allowed words of length `n` in the graph's approximation
/// language: weighted walks of length `n - order`, summed over start states
/// with the renaming-orbit multiplicity when the graph is quotiented.
pub fn graph_count(g: &FactorGraph, n: usize) -> Result<BigUint> {
    if n < g.order() {
        return Err(Error::LengthBelowOrder {
            n,
            order: g.order(),
        });
    }
    let steps = n - g.order();
    let n_states = g.n_states();
    let (row_start, dst, weight) = g.out_csr();
    let mut walks = vec![BigUint::from(1u32); n_states];
    let mut next = vec![BigUint::ZERO; n_states];
    for _ in 0..steps {
        for u in 0..n_states {
            let mut acc = BigUint::ZERO;
            for e in row_start[u]..row_start[u + 1] {
                acc += &walks[dst[e] as usize] * BigUint::from(weight[e]);
            }
            next[u] = acc;
        }
        std::mem::swap(&mut walks, &mut next);
    }
    let mut total = BigUint::ZERO;
    for (u, w) in walks.iter().enumerate() {
        total += w * orbit_size(g, u);
    }
    Ok(total)
}

fn orbit_size(g: &FactorGraph, state: usize) -> BigUint {
    if !g.symmetric() {
        return BigUint::from(1u32);
    }
    let k = g.task().alphabet as u32;
    let d = g.distinct_letters(state) as u32;
    (0..d).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(k - i))
}

/// Fekete submultiplicativity: `counts[i+j] <= counts[i] * counts[j]`
/// wherever all three indices are in range. Holds for every factorial
/// language, so a failure flags a counting bug.
pub fn fekete_check(series: &CountSeries) -> bool {
    let c = &series.counts;
    for i in 0..c.len() {
        for j in i..c.len() {
            if let Some(sum) = c.get(i + j)
                && *sum > &c[i] * &c[j]
            {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker::is_allowed;
    use crate::task::TaskSpec;

    fn exp(text: &str) -> RationalExponent {
        text.parse().unwrap()
    }

    fn counts_u64(s: &CountSeries) -> Vec<u64> {
        s.counts
            .iter()
            .map(|c| u64::try_from(c).expect("small count"))
            .collect()
    }

    #[test]
    fn brute_examples() {
        let s = brute_count(2, &exp("3"), None, 4).unwrap();
        assert_eq!(counts_u64(&s), vec![1, 2, 4, 6, 10]);

        let s = brute_count(3, &exp("2"), None, 3).unwrap();
        assert_eq!(counts_u64(&s), vec![1, 3, 6, 12]);

        // binary square-free words die out at length 4
        let s = brute_count(2, &exp("2"), None, 5).unwrap();
        assert_eq!(counts_u64(&s), vec![1, 2, 2, 2, 0, 0]);
    }

    /// Filter-everything reference for the enumerator, independent of the
    /// pruning search (shares only the allowance predicate).
    fn filter_count(k: u8, e: &RationalExponent, cap: Option<usize>, n: usize) -> u64 {
        let mut total = 0u64;
        let mut word = vec![0u8; n];
        loop {
            if is_allowed(&word, e, cap) {
                total += 1;
            }
            // odometer increment
            let mut pos = n;
            loop {
                if pos == 0 {
                    return total;
                }
                pos -= 1;
                if word[pos] + 1 < k {
                    word[pos] += 1;
                    word[pos + 1..].fill(0);
                    break;
                }
            }
        }
    }

    #[test]
    fn brute_matches_exhaustive_filter() {
        for (k, e, cap) in [
            (2u8, "3", None),
            (2, "7/3+", Some(2)),
            (3, "2", None),
            (3, "2+", Some(1)),
        ] {
            let e = exp(e);
            let s = brute_count(k, &e, cap, 7).unwrap();
            for n in 0..=7usize {
                let reference = if n == 0 {
                    1
                } else {
                    filter_count(k, &e, cap, n)
                };
                assert_eq!(
                    counts_u64(&s)[n],
                    reference,
                    "mismatch at k={k} e={e} cap={cap:?} n={n}"
                );
            }
        }
    }

    #[test]
    fn cap_saturation() {
        // a forbidden power inside a length-n word has period at most n
        for (k, e) in [(2u8, "3"), (2, "2+"), (3, "2"), (3, "7/3")] {
            let e = exp(e);
            let capped = brute_count(k, &e, Some(12), 12).unwrap();
            let free = brute_count(k, &e, None, 12).unwrap();
            assert_eq!(capped.counts, free.counts);
        }
    }

    #[test]
    fn graph_count_examples() {
        let t = TaskSpec::new(2, exp("3"), 1).unwrap().with_symmetry(false);
        let g = FactorGraph::build(&t).unwrap();
        assert_eq!(graph_count(&g, 2).unwrap(), BigUint::from(4u32));
        assert_eq!(graph_count(&g, 3).unwrap(), BigUint::from(6u32));

        let t = TaskSpec::new(3, exp("2"), 1).unwrap().with_symmetry(false);
        let g = FactorGraph::build(&t).unwrap();
        assert_eq!(graph_count(&g, 5).unwrap(), BigUint::from(48u32)); // 3 * 2^4

        // at n = order the count is the unquotiented state total
        let full = FactorGraph::build(&TaskSpec::new(3, exp("2"), 2).unwrap().with_symmetry(false))
            .unwrap();
        assert_eq!(
            graph_count(&full, full.order()).unwrap(),
            BigUint::from(full.n_states() as u64)
        );
        let quot = FactorGraph::build(&TaskSpec::new(3, exp("2"), 2).unwrap().with_symmetry(true))
            .unwrap();
        assert_eq!(
            graph_count(&quot, quot.order()).unwrap(),
            BigUint::from(full.n_states() as u64)
        );
    }

    #[test]
    fn graph_count_rejects_short_lengths() {
        let t = TaskSpec::new(2, exp("3"), 1).unwrap().with_symmetry(false);
        let g = FactorGraph::build(&t).unwrap();
        assert!(matches!(
            graph_count(&g, 1),
            Err(Error::LengthBelowOrder { n: 1, order: 2 })
        ));
    }

    #[test]
    fn fekete_examples() {
        let factorial = brute_count(2, &exp("3"), None, 10).unwrap();
        assert!(fekete_check(&factorial));

        let bogus = CountSeries {
            alphabet: 2,
            exponent: exp("3"),
            period_cap: None,
            counts: vec![1u32, 2, 5].into_iter().map(BigUint::from).collect(),
        };
        assert!(!fekete_check(&bogus)); // 5 > 2 * 2

        let finite = brute_count(2, &exp("2"), None, 8).unwrap();
        assert!(fekete_check(&finite)); // all-zero tail is fine
    }

    #[test]
    fn csv_shape() {
        let s = brute_count(2, &exp("3"), Some(1), 3).unwrap();
        assert_eq!(s.to_csv(), "n,count\n0,1\n1,2\n2,4\n3,6\n");
    }
}
