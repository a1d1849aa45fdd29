//! `cantor`: sort lines, build suffix arrays, inspect the precision budget and
//! benchmark the sorters from the command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input or configuration error.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use cantor_core::{
    adversarial_probe, baseline_sort, cantor_sort, generate_corpus, naive_suffix_array,
    run_benchmark, suffix_array, Algorithm, Alphabet, CorpusKind, CorpusSpec, RadixConfig,
    SortConfig, DEFAULT_EPSILON, F64_MANTISSA_BITS,
};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

/// Prefixes sampled per (position, rank pair) by the `analyze` probe.
const PROBE_PREFIXES: usize = 1000;

#[derive(Parser)]
#[command(
    name = "cantor",
    version,
    about = "String sorting with order-preserving floating-point keys"
)]
struct Cli {
    /// Alphabet file: one symbol per line, in sort order (default a-z).
    #[arg(long, global = true)]
    alphabet: Option<PathBuf>,

    /// Radix headroom; the radix is alphabet size + epsilon.
    #[arg(long, global = true, default_value_t = DEFAULT_EPSILON)]
    epsilon: u32,

    /// Chunk length override (at most the derived maximum).
    #[arg(long, global = true)]
    chunk_len: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    /// Bench reports only.
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Sort newline-delimited strings.
    Sort(InputArgs),
    /// Print the suffix array of the first input line.
    Suffix(InputArgs),
    /// Report the radix, precision budget and per-position gaps.
    Analyze {
        /// Seed for the adversarial probe.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Benchmark the sorters on a generated corpus.
    Bench(BenchArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Input file; standard input when omitted or `-`.
    input: Option<PathBuf>,

    /// Cross-check against the direct-comparison oracle.
    #[arg(long)]
    verify: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_enum, default_value_t = KindArg::RandomUniform)]
    kind: KindArg,

    /// Number of strings (dictionary: 0 reads every line).
    #[arg(long, default_value_t = 10_000)]
    n: usize,

    #[arg(long, default_value_t = 0)]
    len_min: usize,

    #[arg(long, default_value_t = 64)]
    len_max: usize,

    #[arg(long, default_value_t = 32)]
    prefix_len: usize,

    /// Word list for `--kind dictionary-file`.
    #[arg(long)]
    dictionary: Option<PathBuf>,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Comma-separated list of cantor, baseline, splitwise:<k>.
    #[arg(long, value_delimiter = ',', default_value = "cantor,baseline")]
    algorithms: Vec<String>,

    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    RandomUniform,
    SharedPrefix,
    DictionaryFile,
    AllEqual,
    NearTieAdversarial,
}

enum Failure {
    /// Exit 1.
    Verification(String),
    /// Exit 2.
    Input(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(err: E) -> Self {
        Failure::Input(err.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("cantor: verification failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("cantor: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    let alphabet = match &cli.alphabet {
        Some(path) => {
            Alphabet::load(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?
        }
        None => Alphabet::lowercase(),
    };
    let radix = RadixConfig::derive(&alphabet, cli.epsilon)?;
    let mut config = SortConfig::new(alphabet, radix);
    if let Some(k) = cli.chunk_len {
        config = config.with_chunk_len(k)?;
    }
    if cli.format == Format::Csv && !matches!(cli.command, Command::Bench(_)) {
        return Err(Failure::Input("--format csv applies to bench only".into()));
    }
    match &cli.command {
        Command::Sort(args) => cmd_sort(cli, &config, args),
        Command::Suffix(args) => cmd_suffix(cli, &config, args),
        Command::Analyze { seed } => cmd_analyze(cli, &config, *seed),
        Command::Bench(args) => cmd_bench(cli, &config, args),
    }
}

fn read_input(input: &Option<PathBuf>) -> Result<String, Failure> {
    match input {
        Some(path) if path.as_os_str() != "-" => {
            fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
        }
        _ => {
            let mut text = String::new();
            io::stdin()
                .read_to_string(&mut text)
                .map_err(|e| Failure::Input(format!("standard input: {e}")))?;
            Ok(text)
        }
    }
}

fn emit(text: &str) -> CmdResult {
    let mut out = io::stdout().lock();
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

/// Encoding errors carry a string index; report it as a 1-based line number.
fn line_error(err: cantor_core::Error) -> Failure {
    match err {
        cantor_core::Error::Encoding(e) => Failure::Input(format!(
            "line {}: symbol {:?} at column {} is not in the alphabet",
            e.string.unwrap_or(0) + 1,
            e.symbol,
            e.position + 1
        )),
        other => other.into(),
    }
}

fn cmd_sort(cli: &Cli, config: &SortConfig, args: &InputArgs) -> CmdResult {
    let text = read_input(&args.input)?;
    let lines: Vec<&str> = text.lines().collect();
    let outcome = cantor_sort(&lines, config).map_err(line_error)?;
    if args.verify {
        let oracle = baseline_sort(&lines, &config.alphabet).map_err(line_error)?;
        if oracle.permutation != outcome.permutation {
            return Err(Failure::Verification(
                "key order differs from direct comparison".into(),
            ));
        }
    }
    let sorted = outcome.apply(&lines);
    let body = match cli.format {
        Format::Json => {
            let doc = json!({
                "sorted": sorted,
                "permutation": outcome.permutation,
                "comparisons": outcome.comparisons,
                "preprocess_symbols": outcome.preprocess_symbols,
                "chunk_len": config.chunk_len,
            });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        _ => sorted.iter().fold(String::new(), |mut acc, line| {
            acc.push_str(line);
            acc.push('\n');
            acc
        }),
    };
    emit(&body)
}

fn cmd_suffix(cli: &Cli, config: &SortConfig, args: &InputArgs) -> CmdResult {
    let text = read_input(&args.input)?;
    let source = text.lines().next().unwrap_or("");
    let sa = suffix_array(source, &config.alphabet, &config.radix).map_err(line_error)?;
    if args.verify {
        let oracle = naive_suffix_array(source, &config.alphabet).map_err(line_error)?;
        if oracle.order != sa.order {
            return Err(Failure::Verification(
                "suffix order differs from direct comparison".into(),
            ));
        }
    }
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&sa)? + "\n",
        _ => sa.order.iter().fold(String::new(), |mut acc, i| {
            let _ = writeln!(acc, "{i}");
            acc
        }),
    };
    emit(&body)
}

fn cmd_analyze(cli: &Cli, config: &SortConfig, seed: u64) -> CmdResult {
    let radix = &config.radix;
    let alphabet = &config.alphabet;
    let k = radix.max_chunk_len();
    let gaps: Vec<f64> = (0..k).map(|l| radix.min_gap(l)).collect();
    let at_budget = adversarial_probe(alphabet, radix, k, PROBE_PREFIXES, seed);
    let beyond = adversarial_probe(alphabet, radix, k + 1, PROBE_PREFIXES, seed);

    let body = match cli.format {
        Format::Json => {
            let doc = json!({
                "alphabet_size": alphabet.size(),
                "zeta": radix.zeta(),
                "epsilon": radix.epsilon(),
                "x": radix.x(),
                "mantissa_bits": F64_MANTISSA_BITS,
                "error_bound": radix.error_bound(),
                "max_chunk_len": k,
                "near_tie_threshold": radix.near_tie_threshold(),
                "min_gap": gaps,
                "probe": [at_budget, beyond],
            });
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        _ => {
            let mut s = String::new();
            let _ = writeln!(s, "alphabet size |T|   {}", alphabet.size());
            let _ = writeln!(s, "zeta                {}", radix.zeta());
            let _ = writeln!(s, "epsilon             {}", radix.epsilon());
            let _ = writeln!(s, "radix x             {}", radix.x());
            let _ = writeln!(s, "mantissa bits       {F64_MANTISSA_BITS}");
            let _ = writeln!(s, "error bound         {:.6e}", radix.error_bound());
            let _ = writeln!(s, "max chunk len k     {k}");
            let _ = writeln!(s, "near-tie threshold  {:.6e}", radix.near_tie_threshold());
            let _ = writeln!(s, "min gap by position");
            for (l, gap) in gaps.iter().enumerate() {
                let _ = writeln!(s, "  {l:>3}  {gap:.6e}");
            }
            let _ = writeln!(
                s,
                "adversarial probe ({PROBE_PREFIXES} prefixes per position and rank pair, seed {seed})"
            );
            for probe in [&at_budget, &beyond] {
                let verdict = if probe.violations == 0 {
                    "order preserved"
                } else {
                    "order violated"
                };
                let _ = writeln!(
                    s,
                    "  k = {:<3} {} pairs, {} violations: {verdict}",
                    probe.chunk_len, probe.pairs, probe.violations
                );
            }
            s
        }
    };
    emit(&body)
}

fn cmd_bench(cli: &Cli, config: &SortConfig, args: &BenchArgs) -> CmdResult {
    let kind = match args.kind {
        KindArg::RandomUniform => CorpusKind::RandomUniform,
        KindArg::SharedPrefix => CorpusKind::SharedPrefix,
        KindArg::AllEqual => CorpusKind::AllEqual,
        KindArg::NearTieAdversarial => CorpusKind::NearTieAdversarial,
        KindArg::DictionaryFile => CorpusKind::DictionaryFile {
            path: args.dictionary.clone().ok_or_else(|| {
                Failure::Input("--kind dictionary-file needs --dictionary".into())
            })?,
        },
    };
    let spec = CorpusSpec {
        kind,
        n: args.n,
        len_min: args.len_min,
        len_max: args.len_max,
        prefix_len: args.prefix_len,
        seed: args.seed,
    };
    let algorithms = args
        .algorithms
        .iter()
        .map(|a| a.parse::<Algorithm>())
        .collect::<Result<Vec<_>, _>>()?;
    let corpus = generate_corpus(&spec, &config.alphabet)?;
    let report = match run_benchmark(&spec, &corpus, &algorithms, config) {
        Err(err @ cantor_core::Error::PermutationMismatch { .. }) => {
            return Err(Failure::Verification(err.to_string()))
        }
        other => other.map_err(line_error)?,
    };
    let body = match cli.format {
        Format::Json => report.to_json()? + "\n",
        Format::Csv => report.to_csv()?,
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(
                s,
                "corpus {} n={} symbols={} seed={} chunk_len={}",
                spec.kind.name(),
                report.strings,
                report.total_symbols,
                spec.seed,
                report.chunk_len
            );
            let _ = writeln!(
                s,
                "{:<14} {:>14} {:>14} {:>16} {:>12} {:>10}",
                "algorithm", "wall_ns", "comparisons", "unit_comparisons", "preprocess", "aux_keys"
            );
            for r in &report.records {
                let _ = writeln!(
                    s,
                    "{:<14} {:>14} {:>14} {:>16} {:>12} {:>10}",
                    r.algorithm,
                    r.wall_time_ns,
                    r.comparisons,
                    r.unit_comparisons,
                    r.preprocess_symbols,
                    r.aux_keys
                );
            }
            s
        }
    };
    match &args.output {
        Some(path) => {
            fs::write(path, body).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
        }
        None => emit(&body),
    }
}
