//! Suffix arrays from suffix keys.
//!
//! All suffix keys come out of one right-to-left Horner pass that shares the
//! accumulator between consecutive suffixes. Suffixes sharing a prefix longer
//! than the precision budget get keys that are equal or apart only by
//! rounding noise, so any pair closer than the near-tie threshold is compared
//! directly.

use std::cmp::Ordering;

use serde::Serialize;

use crate::alphabet::{Alphabet, RadixConfig};
use crate::error::Result;
use crate::keying::CantorKey;
use crate::sorting::merge_sort_indices;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuffixKeys {
    /// `keys[j]` is the key of the suffix starting at `j`.
    pub keys: Vec<CantorKey>,
    pub source_len: usize,
    /// Divide-add steps performed; always `source_len`.
    pub steps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuffixArray {
    pub order: Vec<usize>,
    pub fallback_count: u64,
    pub comparisons: u64,
}

/// One pass over `ranks` from the back.
fn keys_from_ranks(ranks: &[u32], x: f64) -> SuffixKeys {
    let mut keys = vec![CantorKey::EMPTY; ranks.len()];
    let mut acc = 0.0;
    let mut steps = 0;
    for (slot, &rank) in keys.iter_mut().zip(ranks).rev() {
        acc = acc / x + f64::from(rank);
        *slot = CantorKey::from_raw(acc);
        steps += 1;
    }
    SuffixKeys {
        keys,
        source_len: ranks.len(),
        steps,
    }
}

/// Keys of every suffix of `s`, indexed by suffix start.
pub fn suffix_keys(s: &str, alphabet: &Alphabet, config: &RadixConfig) -> Result<SuffixKeys> {
    let ranks = alphabet.ranks(s)?;
    Ok(keys_from_ranks(&ranks, config.radix()))
}

/// Suffix array by key comparison with the near-tie fallback.
pub fn suffix_array(s: &str, alphabet: &Alphabet, config: &RadixConfig) -> Result<SuffixArray> {
    let ranks = alphabet.ranks(s)?;
    let keys = keys_from_ranks(&ranks, config.radix()).keys;
    let threshold = config.near_tie_threshold();
    let mut fallback_count = 0u64;
    let (order, comparisons) = merge_sort_indices(ranks.len(), |a, b| {
        let (ka, kb) = (keys[a].value(), keys[b].value());
        if (ka - kb).abs() > threshold {
            ka.total_cmp(&kb)
        } else {
            fallback_count += 1;
            ranks[a..].cmp(&ranks[b..])
        }
    });
    Ok(SuffixArray {
        order,
        fallback_count,
        comparisons,
    })
}

/// Suffix array by direct suffix comparison. A proper prefix sorts first.
pub fn naive_suffix_array(s: &str, alphabet: &Alphabet) -> Result<SuffixArray> {
    let ranks = alphabet.ranks(s)?;
    let mut comparisons = 0u64;
    let mut order: Vec<usize> = (0..ranks.len()).collect();
    order.sort_by(|&a, &b| {
        comparisons += 1;
        ranks[a..].cmp(&ranks[b..])
    });
    Ok(SuffixArray {
        order,
        fallback_count: 0,
        comparisons,
    })
}

/// Adjacent suffixes in `order` are non-decreasing and `order` is a permutation.
pub fn is_suffix_array(s: &str, order: &[usize], alphabet: &Alphabet) -> Result<bool> {
    let ranks = alphabet.ranks(s)?;
    let mut seen = vec![false; ranks.len()];
    if order.len() != ranks.len() {
        return Ok(false);
    }
    for &i in order {
        if i >= seen.len() || std::mem::replace(&mut seen[i], true) {
            return Ok(false);
        }
    }
    Ok(order
        .windows(2)
        .all(|w| ranks[w[0]..].cmp(&ranks[w[1]..]) == Ordering::Less))
}
