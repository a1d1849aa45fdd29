//! Corpus generation and instrumented benchmark runs.
//!
//! Reports carry comparison counts from instrumented comparators; wall time is
//! recorded but never asserted on.

use std::fmt;
use std::fs;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::sorting::{baseline_sort, splitwise_sort, SortConfig, SortOutcome};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum CorpusKind {
    RandomUniform,
    /// Every string starts with the same random prefix of `prefix_len` symbols.
    SharedPrefix,
    /// Lines of a file; `n = 0` takes every line, otherwise the first `n`.
    DictionaryFile {
        path: PathBuf,
    },
    /// `n` copies of one random string.
    AllEqual,
    /// Pairs `p + sym(r) + sym(zeta)*` / `p + sym(r + 1)` of length at most `len_max`.
    NearTieAdversarial,
}

impl CorpusKind {
    pub fn name(&self) -> &'static str {
        match self {
            CorpusKind::RandomUniform => "random-uniform",
            CorpusKind::SharedPrefix => "shared-prefix",
            CorpusKind::DictionaryFile { .. } => "dictionary-file",
            CorpusKind::AllEqual => "all-equal",
            CorpusKind::NearTieAdversarial => "near-tie-adversarial",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusSpec {
    #[serde(flatten)]
    pub kind: CorpusKind,
    pub n: usize,
    pub len_min: usize,
    pub len_max: usize,
    pub prefix_len: usize,
    pub seed: u64,
}

impl CorpusSpec {
    pub fn random(n: usize, len_min: usize, len_max: usize, seed: u64) -> Self {
        CorpusSpec {
            kind: CorpusKind::RandomUniform,
            n,
            len_min,
            len_max,
            prefix_len: 0,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.len_min > self.len_max {
            return Err(Error::Corpus(format!(
                "len_min {} exceeds len_max {}",
                self.len_min, self.len_max
            )));
        }
        if self.kind == CorpusKind::NearTieAdversarial && self.len_max == 0 {
            return Err(Error::Corpus("near-tie corpus needs len_max >= 1".into()));
        }
        Ok(())
    }
}

/// Builds the corpus described by `spec`; identical specs give identical corpora.
pub fn generate_corpus(spec: &CorpusSpec, alphabet: &Alphabet) -> Result<Vec<String>> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let zeta = alphabet.zeta();
    let random_string = |rng: &mut ChaCha8Rng, len: usize| -> String {
        (0..len)
            .map(|_| {
                alphabet
                    .symbol(rng.random_range(1..=zeta))
                    .expect("rank in range")
            })
            .collect()
    };
    let corpus = match &spec.kind {
        CorpusKind::RandomUniform => (0..spec.n)
            .map(|_| {
                let len = rng.random_range(spec.len_min..=spec.len_max);
                random_string(&mut rng, len)
            })
            .collect(),
        CorpusKind::SharedPrefix => {
            let prefix = random_string(&mut rng, spec.prefix_len);
            (0..spec.n)
                .map(|_| {
                    let len = rng.random_range(spec.len_min..=spec.len_max);
                    prefix.clone() + &random_string(&mut rng, len)
                })
                .collect()
        }
        CorpusKind::AllEqual => {
            let len = rng.random_range(spec.len_min..=spec.len_max);
            let s = random_string(&mut rng, len);
            vec![s; spec.n]
        }
        CorpusKind::DictionaryFile { path } => {
            let text = fs::read_to_string(path)?;
            let lines = text.lines().map(str::to_owned);
            if spec.n == 0 {
                lines.collect()
            } else {
                lines.take(spec.n).collect()
            }
        }
        CorpusKind::NearTieAdversarial => {
            if zeta < 2 {
                return Err(Error::Corpus(
                    "near-tie corpus needs at least two symbols".into(),
                ));
            }
            let top = alphabet.symbol(zeta).expect("non-empty alphabet");
            let mut out = Vec::with_capacity(spec.n);
            while out.len() < spec.n {
                let l = rng.random_range(0..spec.len_max);
                let r = rng.random_range(1..zeta);
                let prefix = random_string(&mut rng, l);
                let mut low = prefix.clone();
                low.push(alphabet.symbol(r).expect("rank in range"));
                low.extend(std::iter::repeat_n(top, spec.len_max - l - 1));
                let mut high = prefix;
                high.push(alphabet.symbol(r + 1).expect("rank in range"));
                out.push(high);
                out.push(low);
            }
            out.truncate(spec.n);
            out
        }
    };
    Ok(corpus)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    Cantor,
    Splitwise(usize),
    Baseline,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algorithm::Cantor => f.write_str("cantor"),
            Algorithm::Splitwise(k) => write!(f, "splitwise:{k}"),
            Algorithm::Baseline => f.write_str("baseline"),
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cantor" => Ok(Algorithm::Cantor),
            "baseline" => Ok(Algorithm::Baseline),
            _ => s
                .strip_prefix("splitwise:")
                .and_then(|k| k.parse().ok())
                .map(Algorithm::Splitwise)
                .ok_or_else(|| Error::Corpus(format!("unknown algorithm {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgorithmRecord {
    pub algorithm: String,
    pub wall_time_ns: u64,
    pub comparisons: u64,
    pub unit_comparisons: u64,
    pub preprocess_symbols: u64,
    pub aux_keys: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BenchReport {
    pub corpus: CorpusSpec,
    pub strings: usize,
    pub total_symbols: u64,
    pub chunk_len: usize,
    pub records: Vec<AlgorithmRecord>,
    pub environment: String,
}

impl BenchReport {
    pub fn record(&self, algorithm: &str) -> Option<&AlgorithmRecord> {
        self.records.iter().find(|r| r.algorithm == algorithm)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// One row per algorithm.
    pub fn to_csv(&self) -> Result<String> {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record([
            "corpus",
            "seed",
            "strings",
            "total_symbols",
            "algorithm",
            "wall_time_ns",
            "comparisons",
            "unit_comparisons",
            "preprocess_symbols",
            "aux_keys",
        ])?;
        for r in &self.records {
            writer.write_record([
                self.corpus.kind.name().to_owned(),
                self.corpus.seed.to_string(),
                self.strings.to_string(),
                self.total_symbols.to_string(),
                r.algorithm.clone(),
                r.wall_time_ns.to_string(),
                r.comparisons.to_string(),
                r.unit_comparisons.to_string(),
                r.preprocess_symbols.to_string(),
                r.aux_keys.to_string(),
            ])?;
        }
        let bytes = writer.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn environment_note() -> String {
    format!(
        "{}-{}, {} build",
        std::env::consts::ARCH,
        std::env::consts::OS,
        if cfg!(debug_assertions) {
            "debug"
        } else {
            "release"
        }
    )
}

/// Sorts `corpus` with each algorithm in turn and cross-checks their
/// permutations; any disagreement aborts with [`Error::PermutationMismatch`].
pub fn run_benchmark<S: AsRef<str>>(
    spec: &CorpusSpec,
    corpus: &[S],
    algorithms: &[Algorithm],
    config: &SortConfig,
) -> Result<BenchReport> {
    let mut config = config.clone();
    config.count_comparisons = true;
    let mut reference: Option<(Algorithm, Vec<usize>)> = None;
    let mut records = Vec::with_capacity(algorithms.len());
    for &algorithm in algorithms {
        let start = Instant::now();
        let outcome: SortOutcome = match algorithm {
            Algorithm::Cantor => splitwise_sort(corpus, config.chunk_len, &config)?,
            Algorithm::Splitwise(k) => splitwise_sort(corpus, k, &config)?,
            Algorithm::Baseline => baseline_sort(corpus, &config.alphabet)?,
        };
        let wall_time_ns = start.elapsed().as_nanos().min(u128::from(u64::MAX)) as u64;
        match &reference {
            Some((first, permutation)) if *permutation != outcome.permutation => {
                return Err(Error::PermutationMismatch {
                    left: first.to_string(),
                    right: algorithm.to_string(),
                });
            }
            Some(_) => {}
            None => reference = Some((algorithm, outcome.permutation.clone())),
        }
        records.push(AlgorithmRecord {
            algorithm: algorithm.to_string(),
            wall_time_ns,
            comparisons: outcome.comparisons,
            unit_comparisons: outcome.unit_comparisons,
            preprocess_symbols: outcome.preprocess_symbols,
            aux_keys: outcome.aux_keys,
        });
    }
    Ok(BenchReport {
        corpus: spec.clone(),
        strings: corpus.len(),
        total_symbols: corpus
            .iter()
            .map(|s| s.as_ref().chars().count() as u64)
            .sum(),
        chunk_len: config.chunk_len,
        records,
        environment: environment_note(),
    })
}
