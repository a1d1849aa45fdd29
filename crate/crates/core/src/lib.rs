//! Order-preserving floating-point keys for strings, and the sorters built on them.
//!
//! A string `s` over an alphabet with 1-based ranks maps to
//! `sum(rank(s[i]) / x^i)` in radix `x = |T| + epsilon`. With `x > zeta + 1`
//! the map is strictly monotone, so sorting strings reduces to sorting numbers.
//! In binary64 a single key resolves only [`RadixConfig::max_chunk_len`]
//! symbols; longer strings are split into chunked keys, and suffix sorting
//! falls back to direct comparison on near ties.
//!
//! ```
//! use cantor_core::{cantor_sort, SortConfig};
//!
//! let config = SortConfig::with_epsilon(4).unwrap();
//! let words = ["pear", "apple", "fig", "apricot"];
//! let sorted = cantor_sort(&words, &config).unwrap();
//! assert_eq!(sorted.apply(&words), ["apple", "apricot", "fig", "pear"]);
//! ```

pub mod alphabet;
pub mod bench;
pub mod error;
pub mod keying;
pub mod sorting;
pub mod suffix;

pub use alphabet::{
    derive_radix, error_bound, max_safe_chunk_len, min_gap, Alphabet, RadixConfig, DEFAULT_EPSILON,
    F64_MANTISSA_BITS,
};
pub use bench::{generate_corpus, run_benchmark, Algorithm, BenchReport, CorpusKind, CorpusSpec};
pub use error::{EncodingError, Error, Result};
pub use keying::{
    adversarial_probe, build_prefix_table, cantor_key, chunked_key, compare_chunked,
    key_with_prefix_cache, CantorKey, ChunkedKey, PrefixTable, ProbeReport,
};
pub use sorting::{
    baseline_sort, cantor_sort, is_sorted_permutation, merge_sort_indices,
    sort_by_keys_with_fallback, splitwise_sort, SortConfig, SortOutcome,
};
pub use suffix::{
    is_suffix_array, naive_suffix_array, suffix_array, suffix_keys, SuffixArray, SuffixKeys,
};
