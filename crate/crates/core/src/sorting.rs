//! Key-then-sort string sorting.
//!
//! Phase 1 encodes every string once into a [`ChunkedKey`]. Phase 2 runs a
//! stable merge sort over indices, comparing keys chunk by chunk, so the
//! number of element comparisons does not depend on string length.
//! [`baseline_sort`] compares the strings symbol by symbol and serves as the
//! correctness oracle.

use std::cmp::Ordering;

use serde::Serialize;

use crate::alphabet::{Alphabet, RadixConfig};
use crate::error::{EncodingError, Result};
use crate::keying::{check_chunk_len, ChunkedKey};

#[derive(Debug, Clone)]
pub struct SortConfig {
    pub alphabet: Alphabet,
    pub radix: RadixConfig,
    pub chunk_len: usize,
    pub count_comparisons: bool,
}

impl SortConfig {
    /// Chunk length defaults to the radix's precision budget.
    pub fn new(alphabet: Alphabet, radix: RadixConfig) -> Self {
        SortConfig {
            chunk_len: radix.max_chunk_len(),
            alphabet,
            radix,
            count_comparisons: true,
        }
    }

    /// Lowercase alphabet with the given epsilon.
    pub fn with_epsilon(epsilon: u32) -> Result<Self> {
        let alphabet = Alphabet::lowercase();
        let radix = RadixConfig::derive(&alphabet, epsilon)?;
        Ok(Self::new(alphabet, radix))
    }

    pub fn with_chunk_len(mut self, k: usize) -> Result<Self> {
        check_chunk_len(k, &self.radix)?;
        self.chunk_len = k;
        Ok(self)
    }
}

/// Result of one sort run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SortOutcome {
    /// Input indices in sorted order.
    pub permutation: Vec<usize>,
    /// Element comparisons made by the sort phase.
    pub comparisons: u64,
    /// Finer-grained work: chunk values inspected (key sorts) or symbol pairs
    /// inspected (baseline and fallback comparisons).
    pub unit_comparisons: u64,
    /// Symbols encoded in phase 1.
    pub preprocess_symbols: u64,
    /// Key values held in auxiliary storage.
    pub aux_keys: u64,
    /// Comparisons resolved by the near-tie fallback.
    pub fallbacks: u64,
}

impl SortOutcome {
    /// Reorders `items` by the permutation.
    pub fn apply<'a, S: AsRef<str>>(&self, items: &'a [S]) -> Vec<&'a str> {
        self.permutation
            .iter()
            .map(|&i| items[i].as_ref())
            .collect()
    }

    fn uncounted(mut self, count: bool) -> Self {
        if !count {
            self.comparisons = 0;
            self.unit_comparisons = 0;
        }
        self
    }
}

/// Stable top-down merge sort of `0..n` under `cmp`; returns the order and the
/// number of `cmp` calls (at most `n * ceil(log2 n)`).
pub fn merge_sort_indices<F>(n: usize, mut cmp: F) -> (Vec<usize>, u64)
where
    F: FnMut(usize, usize) -> Ordering,
{
    let mut order: Vec<usize> = (0..n).collect();
    let mut scratch = order.clone();
    let mut calls = 0u64;
    let mut counted = |a: usize, b: usize| {
        calls += 1;
        cmp(a, b)
    };
    merge_pass(&mut order, &mut scratch, &mut counted);
    (order, calls)
}

fn merge_pass<F>(items: &mut [usize], scratch: &mut [usize], cmp: &mut F)
where
    F: FnMut(usize, usize) -> Ordering,
{
    let n = items.len();
    if n < 2 {
        return;
    }
    let mid = n / 2;
    {
        let (left, right) = items.split_at_mut(mid);
        let (s_left, s_right) = scratch.split_at_mut(mid);
        merge_pass(left, s_left, cmp);
        merge_pass(right, s_right, cmp);
    }
    scratch[..n].copy_from_slice(items);
    let (left, right) = scratch[..n].split_at(mid);
    let (mut i, mut j) = (0, 0);
    for slot in items.iter_mut() {
        // Ties take from the left run, which keeps the sort stable.
        let take_left =
            j == right.len() || (i < left.len() && cmp(left[i], right[j]) != Ordering::Greater);
        if take_left {
            *slot = left[i];
            i += 1;
        } else {
            *slot = right[j];
            j += 1;
        }
    }
}

fn encode_all<S: AsRef<str>>(strings: &[S], alphabet: &Alphabet) -> Result<Vec<Vec<u32>>> {
    strings
        .iter()
        .enumerate()
        .map(|(i, s)| {
            alphabet
                .ranks(s.as_ref())
                .map_err(|e| e.in_string(i).into())
        })
        .collect()
}

/// Sorts with chunked keys of length `config.chunk_len`.
pub fn cantor_sort<S: AsRef<str>>(strings: &[S], config: &SortConfig) -> Result<SortOutcome> {
    splitwise_sort(strings, config.chunk_len, config)
}

/// Sorts with chunked keys of explicit length `k`. `k = 1` degenerates to
/// comparing one symbol rank per chunk.
pub fn splitwise_sort<S: AsRef<str>>(
    strings: &[S],
    k: usize,
    config: &SortConfig,
) -> Result<SortOutcome> {
    check_chunk_len(k, &config.radix)?;
    let x = config.radix.radix();
    let mut preprocess_symbols = 0u64;
    let keys = strings
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let ranks = config
                .alphabet
                .ranks(s.as_ref())
                .map_err(|e| e.in_string(i))?;
            preprocess_symbols += ranks.len() as u64;
            Ok(ChunkedKey::from_ranks(&ranks, k, x))
        })
        .collect::<Result<Vec<_>, EncodingError>>()?;
    let aux_keys = keys.iter().map(|k| k.chunks().len() as u64).sum();

    let mut probes = 0u64;
    let (permutation, comparisons) = merge_sort_indices(keys.len(), |a, b| {
        keys[a].cmp_counted(&keys[b], &mut probes)
    });
    Ok(SortOutcome {
        permutation,
        comparisons,
        unit_comparisons: probes,
        preprocess_symbols,
        aux_keys,
        fallbacks: 0,
    }
    .uncounted(config.count_comparisons))
}

/// Symbol-by-symbol comparison under alphabet rank order.
pub fn baseline_sort<S: AsRef<str>>(strings: &[S], alphabet: &Alphabet) -> Result<SortOutcome> {
    for (i, s) in strings.iter().enumerate() {
        alphabet.validate(s.as_ref()).map_err(|e| e.in_string(i))?;
    }
    let mut symbols = 0u64;
    let (permutation, comparisons) = merge_sort_indices(strings.len(), |a, b| {
        compare_by_rank(
            strings[a].as_ref(),
            strings[b].as_ref(),
            alphabet,
            &mut symbols,
        )
    });
    Ok(SortOutcome {
        permutation,
        comparisons,
        unit_comparisons: symbols,
        ..SortOutcome::default()
    })
}

/// Lexicographic comparison by rank; every symbol must be in the alphabet.
pub(crate) fn compare_by_rank(
    a: &str,
    b: &str,
    alphabet: &Alphabet,
    symbols: &mut u64,
) -> Ordering {
    let mut left = a.chars();
    let mut right = b.chars();
    loop {
        match (left.next(), right.next()) {
            (Some(p), Some(q)) => {
                *symbols += 1;
                if p != q {
                    return alphabet.rank(p).cmp(&alphabet.rank(q));
                }
            }
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (None, None) => return Ordering::Equal,
        }
    }
}

/// Sorts by precomputed single keys, deferring to direct string comparison
/// whenever two keys are within `threshold` of each other.
///
/// With `threshold` above the combined rounding error of both keys, a key
/// difference beyond it always has the sign of the exact difference, so the
/// comparator is the true lexicographic order.
pub fn sort_by_keys_with_fallback<S: AsRef<str>>(
    strings: &[S],
    keys: &[f64],
    threshold: f64,
    alphabet: &Alphabet,
) -> Result<SortOutcome> {
    assert_eq!(strings.len(), keys.len(), "one key per string");
    encode_all(strings, alphabet)?;
    let mut fallbacks = 0u64;
    let mut symbols = 0u64;
    let (permutation, comparisons) = merge_sort_indices(strings.len(), |a, b| {
        let gap = keys[a] - keys[b];
        if gap.abs() > threshold {
            keys[a].total_cmp(&keys[b])
        } else {
            fallbacks += 1;
            compare_by_rank(
                strings[a].as_ref(),
                strings[b].as_ref(),
                alphabet,
                &mut symbols,
            )
        }
    });
    Ok(SortOutcome {
        permutation,
        comparisons,
        unit_comparisons: symbols,
        preprocess_symbols: 0,
        aux_keys: keys.len() as u64,
        fallbacks,
    })
}

/// True if the permutation is a bijection and yields a non-decreasing sequence.
pub fn is_sorted_permutation<S: AsRef<str>>(
    strings: &[S],
    permutation: &[usize],
    alphabet: &Alphabet,
) -> bool {
    if permutation.len() != strings.len() {
        return false;
    }
    let mut seen = vec![false; strings.len()];
    for &i in permutation {
        if i >= seen.len() || std::mem::replace(&mut seen[i], true) {
            return false;
        }
    }
    permutation.windows(2).all(|w| {
        compare_by_rank(
            strings[w[0]].as_ref(),
            strings[w[1]].as_ref(),
            alphabet,
            &mut 0,
        ) != Ordering::Greater
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use proptest::prelude::*;

    fn config() -> SortConfig {
        SortConfig::with_epsilon(4).unwrap()
    }

    #[test]
    fn three_strings() {
        let out = cantor_sort(&["b", "ab", "aa"], &config()).unwrap();
        assert_eq!(out.permutation, vec![2, 1, 0]);
        assert_eq!(out.preprocess_symbols, 5);
        assert_eq!(out.aux_keys, 3);
    }

    #[test]
    fn empty_input() {
        let out = cantor_sort::<&str>(&[], &config()).unwrap();
        assert!(out.permutation.is_empty());
        assert_eq!(out.comparisons, 0);
    }

    #[test]
    fn k1_ranks() {
        let c = config();
        let out = splitwise_sort(&["ba", "ab"], 1, &c).unwrap();
        assert_eq!(out.permutation, vec![1, 0]);
        let ba = ChunkedKey::from_ranks(&[2, 1], 1, c.radix.radix());
        assert_eq!(
            ba.chunks().iter().map(|k| k.value()).collect::<Vec<_>>(),
            vec![2.0, 1.0]
        );
    }

    #[test]
    fn second_chunk_decides() {
        let out = splitwise_sort(&["aaaaaaaaab", "aaaaaaaaaa"], 8, &config()).unwrap();
        assert_eq!(out.permutation, vec![1, 0]);
        // One comparison, two chunk probes: first chunks tie.
        assert_eq!((out.comparisons, out.unit_comparisons), (1, 2));
    }

    #[test]
    fn baseline_examples() {
        let lower = Alphabet::lowercase();
        assert_eq!(
            baseline_sort(&["b", "a"], &lower).unwrap().permutation,
            vec![1, 0]
        );
        let reversed = Alphabet::new(['b', 'a']).unwrap();
        assert_eq!(
            baseline_sort(&["a", "b"], &reversed).unwrap().permutation,
            vec![1, 0]
        );
    }

    #[test]
    fn custom_alphabet_cantor_matches_baseline() {
        let alphabet = Alphabet::new(['b', 'a']).unwrap();
        let radix = RadixConfig::derive(&alphabet, 2).unwrap();
        let c = SortConfig::new(alphabet.clone(), radix);
        let words = ["a", "b", "ab", "ba", "bb", "aa", ""];
        assert_eq!(
            cantor_sort(&words, &c).unwrap().permutation,
            baseline_sort(&words, &alphabet).unwrap().permutation
        );
    }

    #[test]
    fn encoding_error_names_the_string() {
        let err = cantor_sort(&["ok", "also", "bad!"], &config()).unwrap_err();
        match err {
            Error::Encoding(e) => assert_eq!((e.string, e.position, e.symbol), (Some(2), 3, '!')),
            other => panic!("unexpected {other:?}"),
        }
        assert!(baseline_sort(&["A"], &Alphabet::lowercase()).is_err());
    }

    #[test]
    fn duplicates_keep_input_order() {
        let words = ["b", "a", "b", "a", "b"];
        let out = cantor_sort(&words, &config()).unwrap();
        assert_eq!(out.permutation, vec![1, 3, 0, 2, 4]);
    }

    #[test]
    fn chunk_len_validation() {
        let c = config();
        assert!(c.clone().with_chunk_len(0).is_err());
        assert!(c.clone().with_chunk_len(9).is_err());
        assert_eq!(c.with_chunk_len(3).unwrap().chunk_len, 3);
    }

    #[test]
    fn counting_switch() {
        let mut c = config();
        c.count_comparisons = false;
        let out = cantor_sort(&["c", "b", "a"], &c).unwrap();
        assert_eq!(out.permutation, vec![2, 1, 0]);
        assert_eq!(out.comparisons, 0);
    }

    #[test]
    fn merge_sort_count_bound() {
        for n in [0usize, 1, 2, 3, 7, 100, 1000, 1025] {
            let (order, calls) = merge_sort_indices(n, |a, b| (n - a).cmp(&(n - b)));
            assert_eq!(order, (0..n).rev().collect::<Vec<_>>());
            let log = (n.max(1) as f64).log2().ceil() as u64;
            assert!(calls <= n as u64 * log);
        }
    }

    #[test]
    fn fallback_sort_handles_collisions() {
        let c = config();
        // Identical keys force fallback on every comparison.
        let words = ["ab", "aa", "b", "a"];
        let out = sort_by_keys_with_fallback(&words, &[0.0; 4], 1.0, &c.alphabet).unwrap();
        assert_eq!(out.permutation, vec![3, 1, 0, 2]);
        assert_eq!(out.fallbacks, out.comparisons);
    }

    #[test]
    fn sortedness_checker() {
        let a = Alphabet::lowercase();
        assert!(is_sorted_permutation(&["b", "a"], &[1, 0], &a));
        assert!(!is_sorted_permutation(&["b", "a"], &[0, 1], &a));
        assert!(!is_sorted_permutation(&["a", "a"], &[0, 0], &a));
        assert!(!is_sorted_permutation(&["a"], &[], &a));
    }

    proptest! {
        #[test]
        fn all_sorters_agree(words in proptest::collection::vec("[a-d]{0,24}", 0..60), k in 1usize..=8) {
            let c = config();
            let base = baseline_sort(&words, &c.alphabet).unwrap();
            prop_assert!(is_sorted_permutation(&words, &base.permutation, &c.alphabet));
            let mut std_sorted: Vec<usize> = (0..words.len()).collect();
            std_sorted.sort_by(|&a, &b| words[a].cmp(&words[b]));
            prop_assert_eq!(&base.permutation, &std_sorted);
            prop_assert_eq!(&cantor_sort(&words, &c).unwrap().permutation, &base.permutation);
            let split = splitwise_sort(&words, k, &c).unwrap();
            prop_assert_eq!(&split.permutation, &base.permutation);
            let total: usize = words.iter().map(|w| w.len()).sum();
            prop_assert_eq!(split.preprocess_symbols, total as u64);
        }
    }
}
