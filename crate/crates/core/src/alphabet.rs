//! Symbol ranks, the radix rule and the floating-point precision budget.
//!
//! Every symbol receives a 1-based rank in declaration order. Keys are
//! evaluated in radix `x = |T| + epsilon`, and the strict monotonicity bound
//! `x > zeta + 1` (adjacent ranks, geometric tail of maximal symbols) is
//! enforced when the radix is derived.

use std::collections::HashMap;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::error::{EncodingError, Error, Result};

/// Epsilon used when none is given; with 26 symbols this yields `x = 30`.
pub const DEFAULT_EPSILON: u32 = 4;

/// Mantissa width of IEEE-754 binary64, including the implicit bit.
pub const F64_MANTISSA_BITS: u32 = 53;

/// Multiplier on the per-key rounding bound. Horner rounding is damped by the
/// division by `x`; 2 ulp per step over the geometric sum is under 4 ulp, doubled.
pub const ROUNDING_SAFETY: f64 = 8.0;

const ASCII_TABLE: usize = 128;

/// An ordered set of symbols with 1-based ranks.
#[derive(Debug, Clone)]
pub struct Alphabet {
    symbols: Vec<char>,
    ascii: [u32; ASCII_TABLE],
    other: HashMap<char, u32>,
}

impl Alphabet {
    /// Builds an alphabet whose rank order is the iteration order of `symbols`.
    pub fn new<I: IntoIterator<Item = char>>(symbols: I) -> Result<Self> {
        let mut alphabet = Alphabet {
            symbols: Vec::new(),
            ascii: [0; ASCII_TABLE],
            other: HashMap::new(),
        };
        for (position, symbol) in symbols.into_iter().enumerate() {
            if alphabet.rank(symbol).is_some() {
                return Err(Error::DuplicateSymbol { symbol, position });
            }
            let rank = position as u32 + 1;
            match ascii_slot(symbol) {
                Some(slot) => alphabet.ascii[slot] = rank,
                None => {
                    alphabet.other.insert(symbol, rank);
                }
            }
            alphabet.symbols.push(symbol);
        }
        if alphabet.symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        Ok(alphabet)
    }

    /// The default alphabet, `'a'..='z'`.
    pub fn lowercase() -> Self {
        Self::new('a'..='z').expect("static alphabet is valid")
    }

    /// All 256 code points `U+0000..=U+00FF`, in code-point order.
    pub fn latin1() -> Self {
        Self::new((0u8..=255).map(char::from)).expect("static alphabet is valid")
    }

    /// Parses the alphabet file format: one symbol per line, in sort order.
    /// Blank lines and lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut symbols = Vec::new();
        for line in text.lines() {
            let line = line.strip_suffix('\r').unwrap_or(line);
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let mut chars = line.chars();
            let symbol = chars.next().expect("non-empty line");
            if chars.next().is_some() {
                return Err(Error::Corpus(format!(
                    "alphabet line {line:?} holds more than one symbol"
                )));
            }
            symbols.push(symbol);
        }
        Self::new(symbols)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse(&fs::read_to_string(path)?)
    }

    /// Rank of `symbol` in `1..=size`, or `None` if it is not in the alphabet.
    #[inline]
    pub fn rank(&self, symbol: char) -> Option<u32> {
        let rank = match ascii_slot(symbol) {
            Some(slot) => self.ascii[slot],
            None => return self.other.get(&symbol).copied(),
        };
        (rank != 0).then_some(rank)
    }

    /// Number of symbols, `|T|`.
    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    /// Largest rank value; equal to `|T|` since ranks are dense.
    pub fn zeta(&self) -> u32 {
        self.symbols.len() as u32
    }

    pub fn symbols(&self) -> &[char] {
        &self.symbols
    }

    /// Symbol holding `rank`, if any.
    pub fn symbol(&self, rank: u32) -> Option<char> {
        rank.checked_sub(1)
            .and_then(|i| self.symbols.get(i as usize))
            .copied()
    }

    /// Maps every symbol of `s` to its rank.
    pub fn ranks(&self, s: &str) -> Result<Vec<u32>, EncodingError> {
        let mut out = Vec::with_capacity(s.len());
        for (position, symbol) in s.chars().enumerate() {
            out.push(self.rank_at(symbol, position)?);
        }
        Ok(out)
    }

    #[inline]
    pub(crate) fn rank_at(&self, symbol: char, position: usize) -> Result<u32, EncodingError> {
        self.rank(symbol).ok_or(EncodingError {
            symbol,
            position,
            string: None,
        })
    }

    /// Fails on the first symbol of `s` without a rank.
    pub fn validate(&self, s: &str) -> Result<(), EncodingError> {
        for (position, symbol) in s.chars().enumerate() {
            self.rank_at(symbol, position)?;
        }
        Ok(())
    }
}

impl Default for Alphabet {
    fn default() -> Self {
        Self::lowercase()
    }
}

#[inline]
fn ascii_slot(symbol: char) -> Option<usize> {
    let code = symbol as usize;
    (code < ASCII_TABLE).then_some(code)
}

/// Radix and precision budget derived from an alphabet and epsilon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RadixConfig {
    epsilon: u32,
    x: u32,
    zeta: u32,
    max_chunk_len: usize,
}

impl RadixConfig {
    /// Derives `x = |T| + epsilon` and the 53-bit chunk budget.
    pub fn derive(alphabet: &Alphabet, epsilon: u32) -> Result<Self> {
        let zeta = alphabet.zeta();
        let x = alphabet.size() as u32 + epsilon;
        // x > zeta + 1 is the proof's bound at C[l] - B[l] = 1.
        if epsilon < 2 || x <= zeta + 1 {
            return Err(Error::EpsilonTooSmall { epsilon, x, zeta });
        }
        let mut config = RadixConfig {
            epsilon,
            x,
            zeta,
            max_chunk_len: 1,
        };
        config.max_chunk_len = max_safe_chunk_len(&config, alphabet, F64_MANTISSA_BITS)?;
        Ok(config)
    }

    pub fn epsilon(&self) -> u32 {
        self.epsilon
    }

    pub fn x(&self) -> u32 {
        self.x
    }

    /// The radix as the floating-point divisor used during key evaluation.
    #[inline]
    pub fn radix(&self) -> f64 {
        f64::from(self.x)
    }

    pub fn zeta(&self) -> u32 {
        self.zeta
    }

    /// Longest string a single key distinguishes in binary64.
    pub fn max_chunk_len(&self) -> usize {
        self.max_chunk_len
    }

    /// Smallest key separation of strings first differing at `position`.
    pub fn min_gap(&self, position: usize) -> f64 {
        min_gap(self.x, self.zeta, position)
    }

    /// Rounding bound for a single binary64 key.
    pub fn error_bound(&self) -> f64 {
        error_bound(self.x, self.zeta, F64_MANTISSA_BITS)
    }

    /// Keys closer than this are treated as undecided and resolved by direct
    /// comparison: half the minimal gap at the last trusted position.
    pub fn near_tie_threshold(&self) -> f64 {
        self.min_gap(self.max_chunk_len - 1) / 2.0
    }

    /// Largest key any string can reach, `zeta * x / (x - 1)`.
    pub fn key_upper_bound(&self) -> f64 {
        let x = self.radix();
        f64::from(self.zeta) * x / (x - 1.0)
    }
}

/// Convenience wrapper for [`RadixConfig::derive`].
pub fn derive_radix(alphabet: &Alphabet, epsilon: u32) -> Result<RadixConfig> {
    RadixConfig::derive(alphabet, epsilon)
}

/// `(x - 1 - zeta) / (x - 1) * x^-position`.
///
/// Strings first differing at `position` by one rank, with the smaller one
/// continuing with maximal symbols forever, are exactly this far apart.
pub fn min_gap(x: u32, zeta: u32, position: usize) -> f64 {
    let x = f64::from(x);
    let headroom = (x - 1.0 - f64::from(zeta)) / (x - 1.0);
    headroom * x.powi(-(position as i32))
}

/// `c * 2^(1 - mantissa_bits) * zeta * x / (x - 1)`, independent of string length.
pub fn error_bound(x: u32, zeta: u32, mantissa_bits: u32) -> f64 {
    let x = f64::from(x);
    ROUNDING_SAFETY * 2f64.powi(1 - mantissa_bits as i32) * f64::from(zeta) * x / (x - 1.0)
}

/// Largest chunk length `k` whose minimal gap at the guard position `k`
/// still exceeds the rounding bound for a `mantissa_bits` significand.
///
/// The guard position keeps a length-`k` chunk separable from its own
/// one-symbol extension. Precision outside `2..=1023` bits is rejected.
pub fn max_safe_chunk_len(
    config: &RadixConfig,
    alphabet: &Alphabet,
    mantissa_bits: u32,
) -> Result<usize> {
    if !(2..=1023).contains(&mantissa_bits) {
        return Err(Error::Precision(mantissa_bits));
    }
    let zeta = alphabet.zeta();
    if config.x <= zeta + 1 {
        return Err(Error::EpsilonTooSmall {
            epsilon: config.epsilon,
            x: config.x,
            zeta,
        });
    }
    // Log space avoids underflow of x^-k for wide mantissas.
    let x = f64::from(config.x);
    let log_headroom = ((x - 1.0 - f64::from(zeta)) / (x - 1.0)).ln();
    let log_bound = error_bound(config.x, zeta, mantissa_bits).ln();
    let log_gap = |k: usize| log_headroom - k as f64 * x.ln();
    let mut k = 1;
    while log_gap(k + 1) > log_bound {
        k += 1;
    }
    Ok(k)
}
