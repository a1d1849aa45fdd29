use std::fmt;

use thiserror::Error;

/// Errors raised while configuring alphabets, encoding strings or running the sorters.
#[derive(Debug, Error)]
pub enum Error {
    #[error("alphabet must contain at least one symbol")]
    EmptyAlphabet,

    #[error("duplicate symbol {symbol:?} at position {position} of the alphabet")]
    DuplicateSymbol { symbol: char, position: usize },

    #[error(
        "epsilon {epsilon} gives radix x = {x}, but monotonicity needs x > zeta + 1 = {}; use epsilon >= 2",
        zeta + 1
    )]
    EpsilonTooSmall { epsilon: u32, x: u32, zeta: u32 },

    #[error("unsupported floating-point precision: {0} mantissa bits (expected 2..=1023)")]
    Precision(u32),

    #[error("{0}")]
    Encoding(#[from] EncodingError),

    #[error("chunk length {k} outside the supported range 1..={max}")]
    ChunkLen { k: usize, max: usize },

    #[error("chunked keys built with different chunk lengths ({left} vs {right})")]
    ChunkLenMismatch { left: usize, right: usize },

    #[error("invalid corpus spec: {0}")]
    Corpus(String),

    #[error("{left} and {right} produced different permutations")]
    PermutationMismatch { left: String, right: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

/// A symbol that has no rank in the active alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct EncodingError {
    pub symbol: char,
    /// Code-point offset of the symbol within its string.
    pub position: usize,
    /// Index of the offending string within a collection, when known.
    pub string: Option<usize>,
}

impl EncodingError {
    pub fn in_string(mut self, index: usize) -> Self {
        self.string = Some(index);
        self
    }
}

impl fmt::Display for EncodingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "symbol {:?} at position {} is not in the alphabet",
            self.symbol, self.position
        )?;
        if let Some(index) = self.string {
            write!(f, " (string {index})")?;
        }
        Ok(())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
