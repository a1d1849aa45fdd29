//! Cantor keys: strings mapped to binary64 values whose numeric order is the
//! lexicographic order of the strings.
//!
//! A key is `sum(rank(s[i]) / x^i)`, always evaluated by the right-to-left
//! Horner recurrence `acc = acc / x + rank(s[i])`. That order is normative:
//! the suffix and prefix-cache paths rely on reproducing it bit for bit.
//!
//! A single key is exact only up to [`RadixConfig::max_chunk_len`] symbols.
//! Longer strings may still be keyed, but only [`ChunkedKey`] guarantees order
//! for arbitrary lengths.

use std::cmp::Ordering;
use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::alphabet::{Alphabet, RadixConfig};
use crate::error::{EncodingError, Error, Result};

/// Order-preserving binary64 key of one string or chunk.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize)]
pub struct CantorKey(f64);

impl CantorKey {
    pub const EMPTY: CantorKey = CantorKey(0.0);

    pub fn value(self) -> f64 {
        self.0
    }

    pub(crate) fn from_raw(value: f64) -> Self {
        CantorKey(value)
    }

    /// Keys are finite and non-negative, so the IEEE order is total here.
    #[inline]
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// One Horner step per rank, consumed last-to-first.
#[inline]
pub(crate) fn horner_ranks(ranks: &[u32], x: f64) -> f64 {
    ranks
        .iter()
        .rev()
        .fold(0.0, |acc, &rank| acc / x + f64::from(rank))
}

/// Key of `s`. Exceeding `max_chunk_len` symbols is allowed but only best-effort.
pub fn cantor_key(s: &str, alphabet: &Alphabet, config: &RadixConfig) -> Result<CantorKey> {
    let x = config.radix();
    let mut acc = 0.0;
    for (back, symbol) in s.chars().rev().enumerate() {
        let Some(rank) = alphabet.rank(symbol) else {
            let position = s.chars().count() - 1 - back;
            return Err(EncodingError {
                symbol,
                position,
                string: None,
            }
            .into());
        };
        acc = acc / x + f64::from(rank);
    }
    Ok(CantorKey(acc))
}

/// A string split into fixed-length chunks, one key per chunk.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChunkedKey {
    chunks: Vec<CantorKey>,
    chunk_len: usize,
    len: usize,
}

impl ChunkedKey {
    pub(crate) fn from_ranks(ranks: &[u32], chunk_len: usize, x: f64) -> Self {
        ChunkedKey {
            chunks: ranks
                .chunks(chunk_len)
                .map(|chunk| CantorKey(horner_ranks(chunk, x)))
                .collect(),
            chunk_len,
            len: ranks.len(),
        }
    }

    pub fn chunks(&self) -> &[CantorKey] {
        &self.chunks
    }

    pub fn chunk_len(&self) -> usize {
        self.chunk_len
    }

    /// Length in symbols of the encoded string.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Chunk-wise comparison; `probes` counts the chunk values inspected.
    #[inline]
    pub(crate) fn cmp_counted(&self, other: &Self, probes: &mut u64) -> Ordering {
        for (a, b) in self.chunks.iter().zip(&other.chunks) {
            *probes += 1;
            match a.cmp_value(b) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.chunks.len().cmp(&other.chunks.len())
    }
}

/// Splits `s` into chunks of `k` symbols (the last may be shorter) and keys each.
pub fn chunked_key(
    s: &str,
    alphabet: &Alphabet,
    config: &RadixConfig,
    k: usize,
) -> Result<ChunkedKey> {
    check_chunk_len(k, config)?;
    let ranks = alphabet.ranks(s)?;
    Ok(ChunkedKey::from_ranks(&ranks, k, config.radix()))
}

pub(crate) fn check_chunk_len(k: usize, config: &RadixConfig) -> Result<()> {
    if k == 0 || k > config.max_chunk_len() {
        return Err(Error::ChunkLen {
            k,
            max: config.max_chunk_len(),
        });
    }
    Ok(())
}

/// Lexicographic order over chunk values; a proper prefix sorts first.
pub fn compare_chunked(a: &ChunkedKey, b: &ChunkedKey) -> Result<Ordering> {
    if a.chunk_len != b.chunk_len {
        return Err(Error::ChunkLenMismatch {
            left: a.chunk_len,
            right: b.chunk_len,
        });
    }
    Ok(a.cmp_counted(b, &mut 0))
}

/// Cached keys of frequent prefixes.
#[derive(Debug, Clone, Default)]
pub struct PrefixTable {
    entries: HashMap<String, (CantorKey, usize)>,
    longest: usize,
}

impl PrefixTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(
        &mut self,
        prefix: &str,
        alphabet: &Alphabet,
        config: &RadixConfig,
    ) -> Result<()> {
        let key = cantor_key(prefix, alphabet, config)?;
        let len = prefix.chars().count();
        self.longest = self.longest.max(len);
        self.entries.insert(prefix.to_owned(), (key, len));
        Ok(())
    }

    /// Cached key and symbol length of `prefix`.
    pub fn get(&self, prefix: &str) -> Option<(CantorKey, usize)> {
        self.entries.get(prefix).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, CantorKey, usize)> {
        self.entries.iter().map(|(p, &(k, l))| (p.as_str(), k, l))
    }

    /// Longest cached prefix of `s`, as (byte offset where the remainder starts, key, length).
    fn longest_match(&self, s: &str) -> Option<(usize, CantorKey, usize)> {
        if self.entries.is_empty() {
            return None;
        }
        let mut cuts: Vec<usize> = s
            .char_indices()
            .map(|(i, _)| i)
            .skip(1)
            .chain(std::iter::once(s.len()))
            .take(self.longest)
            .collect();
        while let Some(cut) = cuts.pop() {
            if let Some((key, len)) = self.get(&s[..cut]) {
                return Some((cut, key, len));
            }
        }
        None
    }
}

pub fn build_prefix_table<I, S>(
    prefixes: I,
    alphabet: &Alphabet,
    config: &RadixConfig,
) -> Result<PrefixTable>
where
    I: IntoIterator<Item = S>,
    S: AsRef<str>,
{
    let mut table = PrefixTable::new();
    for prefix in prefixes {
        table.insert(prefix.as_ref(), alphabet, config)?;
    }
    Ok(table)
}

/// `cached(prefix) + key(remainder) / x^|prefix|` for the longest cached
/// prefix of `s`, or the direct key when none matches. Within a few ulp of
/// [`cantor_key`], not bit-identical.
pub fn key_with_prefix_cache(
    s: &str,
    table: &PrefixTable,
    alphabet: &Alphabet,
    config: &RadixConfig,
) -> Result<CantorKey> {
    let Some((cut, prefix_key, prefix_len)) = table.longest_match(s) else {
        return cantor_key(s, alphabet, config);
    };
    let remainder = cantor_key(&s[cut..], alphabet, config).map_err(|err| match err {
        Error::Encoding(mut e) => {
            e.position += prefix_len;
            Error::Encoding(e)
        }
        other => other,
    })?;
    let scale = config.radix().powi(prefix_len as i32);
    Ok(CantorKey(prefix_key.0 + remainder.0 / scale))
}

/// Outcome of [`adversarial_probe`].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeReport {
    pub chunk_len: usize,
    pub pairs: u64,
    pub violations: u64,
    /// First failing `(B, C)` pair, where `B <lex C` but `key(B) >= key(C)`.
    pub first_violation: Option<(String, String)>,
}

/// Checks key order on the tightest pairs of length at most `chunk_len`.
///
/// For each position `l < chunk_len` and adjacent ranks `(r, r + 1)`, builds
/// `B = p + sym(r) + sym(zeta)*` padded to `chunk_len` and `C = p + sym(r + 1)`
/// for `prefixes_per_case` random prefixes `p` of length `l`, and requires
/// `key(B) < key(C)`.
pub fn adversarial_probe(
    alphabet: &Alphabet,
    config: &RadixConfig,
    chunk_len: usize,
    prefixes_per_case: usize,
    seed: u64,
) -> ProbeReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let zeta = alphabet.zeta();
    let top = alphabet.symbol(zeta).expect("non-empty alphabet");
    let mut report = ProbeReport {
        chunk_len,
        pairs: 0,
        violations: 0,
        first_violation: None,
    };
    let mut prefix = String::new();
    for l in 0..chunk_len {
        // Only one prefix of length zero exists.
        let samples = if l == 0 { 1 } else { prefixes_per_case };
        for r in 1..zeta {
            let low = alphabet.symbol(r).expect("rank in range");
            let high = alphabet.symbol(r + 1).expect("rank in range");
            for _ in 0..samples {
                prefix.clear();
                prefix.extend((0..l).map(|_| {
                    alphabet
                        .symbol(rng.random_range(1..=zeta))
                        .expect("rank in range")
                }));
                let mut b = prefix.clone();
                b.push(low);
                b.extend(std::iter::repeat_n(top, chunk_len - l - 1));
                let mut c = prefix.clone();
                c.push(high);
                let kb = cantor_key(&b, alphabet, config).expect("alphabet symbols");
                let kc = cantor_key(&c, alphabet, config).expect("alphabet symbols");
                report.pairs += 1;
                if kb >= kc {
                    report.violations += 1;
                    report.first_violation.get_or_insert((b, c));
                }
            }
        }
    }
    report
}
