use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use pfxc::container::{decompress_stream, write_container, Alphabet, Codec, Mode};
use pfxc::distribution::{gen_dyadic_capped, gen_uniform, gen_zipf};
use pfxc::report::RunReport;
use pfxc::{huffman_lengths, Distribution, Error, Ratio};
use rand::distributions::{Distribution as _, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

const EXIT_USAGE: u8 = 1;
const EXIT_IO: u8 = 2;
const EXIT_FORMAT: u8 = 3;
const EXIT_BOUND: u8 = 4;

#[derive(Parser)]
#[command(name = "pfxc", version, about = "Prefix-code compressor with constant-time coding")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compress a file and print a run report.
    Compress {
        input: PathBuf,
        output: PathBuf,
        #[command(flatten)]
        codec: CodecArgs,
        #[arg(long, value_enum, default_value = "byte")]
        alphabet: AlphabetArg,
    },
    /// Restore the original bytes from a container.
    Decompress { input: PathBuf, output: PathBuf },
    /// Entropy, Huffman length and projected codec sizes for a file.
    Analyze {
        input: PathBuf,
        /// Read whitespace-separated symbol counts instead of raw data.
        #[arg(long)]
        counts: bool,
        #[arg(long, value_enum, default_value = "byte")]
        alphabet: AlphabetArg,
    },
    /// Sweep a distribution family over n and a parameter grid.
    Bench {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Comma-separated ε values (additive).
        #[arg(long, value_delimiter = ',')]
        epsilon: Vec<String>,
        /// Comma-separated c values (multiplicative).
        #[arg(long, value_delimiter = ',')]
        c: Vec<String>,
        /// Smallest alphabet size; the sweep doubles n up to --nmax.
        #[arg(long, default_value_t = 256)]
        nmin: usize,
        #[arg(long, default_value_t = 65536)]
        nmax: usize,
        /// Message length sampled from each distribution for timing.
        #[arg(long, default_value_t = 1 << 16)]
        len: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args)]
struct CodecArgs {
    #[arg(long, value_enum)]
    mode: ModeArg,
    #[arg(long)]
    epsilon: Option<String>,
    #[arg(long)]
    c: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Additive,
    Multiplicative,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Additive => Mode::Additive,
            ModeArg::Multiplicative => Mode::Multiplicative,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum AlphabetArg {
    Byte,
    U16,
}

impl From<AlphabetArg> for Alphabet {
    fn from(a: AlphabetArg) -> Alphabet {
        match a {
            AlphabetArg::Byte => Alphabet::Byte,
            AlphabetArg::U16 => Alphabet::U16,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Dyadic,
    Zipf,
    Uniform,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Dyadic => "dyadic",
            Family::Zipf => "zipf",
            Family::Uniform => "uniform",
        }
    }

    fn generate(self, n: usize) -> pfxc::Result<Distribution> {
        match self {
            // exact dyadic counts overflow past n = 64; cap the staircase
            Family::Dyadic => gen_dyadic_capped(n, 62),
            Family::Zipf => gen_zipf(n, 1.0),
            Family::Uniform => gen_uniform(n),
        }
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into() }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Failure { code: EXIT_IO, message: format!("{}: {e}", path.display()) }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::EpsilonOutOfRange
            | Error::EpsilonTooSmall
            | Error::FactorOutOfRange
            | Error::InvalidArgument(_)
            | Error::LengthTooLarge(_)
            | Error::InfeasibleLimit { .. } => EXIT_USAGE,
            _ => EXIT_FORMAT,
        };
        Failure { code, message: e.to_string() }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Compress { input, output, codec, alphabet } => compress(&input, &output, &codec, alphabet.into()),
        Command::Decompress { input, output } => decompress(&input, &output),
        Command::Analyze { input, counts, alphabet } => analyze(&input, counts, alphabet.into()),
        Command::Bench { family, mode, epsilon, c, nmin, nmax, len, seed } => {
            bench(family, mode.into(), &epsilon, &c, nmin, nmax, len, seed)
        }
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("pfxc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn parse_ratio(s: &str) -> Result<Ratio, Failure> {
    s.parse().map_err(Failure::from)
}

fn codec_param(args: &CodecArgs) -> Result<(Mode, Ratio), Failure> {
    let (flag, value, other) = match args.mode {
        ModeArg::Additive => ("--epsilon", &args.epsilon, &args.c),
        ModeArg::Multiplicative => ("--c", &args.c, &args.epsilon),
    };
    if other.is_some() {
        return Err(Failure::usage(format!("only {flag} applies to this mode")));
    }
    let value = value.as_deref().ok_or_else(|| Failure::usage(format!("{flag} is required")))?;
    Ok((args.mode.into(), parse_ratio(value)?))
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::io(path, e))
}

fn write(path: &Path, bytes: &[u8]) -> CmdResult {
    fs::write(path, bytes).map_err(|e| Failure::io(path, e))
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string(value).expect("report serializes"));
}

fn compress(input: &Path, output: &Path, args: &CodecArgs, alphabet: Alphabet) -> CmdResult {
    let (mode, param) = codec_param(args)?;
    let data = read(input)?;
    let symbols = alphabet.symbols(&data)?;
    if symbols.is_empty() {
        return Err(Failure { code: EXIT_FORMAT, message: "empty input".into() });
    }
    let d = Distribution::from_symbols(symbols.iter().map(|&s| s as usize), alphabet.size())?;
    let codec = Codec::build(&d, mode, param)?;
    let (report, _) = RunReport::measure(&codec, &d, &symbols)?;
    write(output, &write_container(&codec, &symbols)?)?;
    print_json(&report);
    if !report.within_bound {
        return Err(Failure {
            code: EXIT_BOUND,
            message: format!(
                "bound violated: codec {} vs optimal {} with bound {}",
                report.codec_weighted, report.optimal_weighted, report.bound
            ),
        });
    }
    Ok(())
}

fn decompress(input: &Path, output: &Path) -> CmdResult {
    let data = read(input)?;
    let restored = decompress_stream(&data)?;
    write(output, &restored)
}

const ANALYZE_EPSILONS: [(u32, u32); 3] = [(31, 64), (1, 10), (1, 100)];
const ANALYZE_FACTORS: [(u32, u32); 3] = [(3, 2), (2, 1), (3, 1)];

fn analyze(input: &Path, counts: bool, alphabet: Alphabet) -> CmdResult {
    let data = read(input)?;
    let d = if counts {
        let text = String::from_utf8(data).map_err(|_| Failure::usage("counts file is not UTF-8"))?;
        Distribution::parse_counts(&text)?
    } else {
        let symbols = alphabet.symbols(&data)?;
        Distribution::from_symbols(symbols.iter().map(|&s| s as usize), alphabet.size())?
    };
    let huffman = huffman_lengths(&d);
    let used: Vec<u32> = huffman.lengths().iter().copied().filter(|&l| l > 0).collect();
    let weighted = huffman.weighted_length(&d)?;
    print_json(&json!({
        "n": d.len(),
        "support": d.support(),
        "total": d.total(),
        "entropy_bits": d.entropy_bits(),
        "huffman_weighted": weighted,
        "huffman_bits_per_symbol": weighted as f64 / d.total() as f64,
        "huffman_min_len": used.iter().min(),
        "huffman_max_len": huffman.max_len(),
    }));
    let grid = ANALYZE_EPSILONS
        .iter()
        .map(|&(a, b)| (Mode::Additive, a, b))
        .chain(ANALYZE_FACTORS.iter().map(|&(a, b)| (Mode::Multiplicative, a, b)));
    for (mode, num, den) in grid {
        let param = Ratio::new(num, den)?;
        match Codec::build(&d, mode, param) {
            Ok(codec) => {
                let codec_weighted = codec.weighted_length(&d)?;
                let bound = pfxc::report::bound_for(mode, param, weighted, d.total());
                print_json(&json!({
                    "mode": mode.name(),
                    "param": param.to_string(),
                    "max_codeword_len": codec.max_codeword_len(),
                    "codec_weighted": codec_weighted,
                    "bound": bound,
                    "within_bound": pfxc::report::within_bound(mode, weighted, codec_weighted, bound),
                    "model_bits": codec.serialize_model().len() * 8,
                }));
            }
            Err(e) => print_json(&json!({
                "mode": mode.name(),
                "param": param.to_string(),
                "error": e.to_string(),
            })),
        }
    }
    Ok(())
}

#[derive(serde::Serialize)]
struct BenchRecord {
    family: &'static str,
    seed: u64,
    #[serde(flatten)]
    report: RunReport,
}

#[allow(clippy::too_many_arguments)]
fn bench(
    family: Family,
    mode: Mode,
    epsilon: &[String],
    c: &[String],
    nmin: usize,
    nmax: usize,
    len: usize,
    seed: u64,
) -> CmdResult {
    let (given, other) = match mode {
        Mode::Additive => (epsilon, c),
        Mode::Multiplicative => (c, epsilon),
    };
    if !other.is_empty() {
        return Err(Failure::usage("parameter flag does not match --mode"));
    }
    let defaults: &[(u32, u32)] = match mode {
        Mode::Additive => &ANALYZE_EPSILONS,
        Mode::Multiplicative => &ANALYZE_FACTORS,
    };
    let params: Vec<Ratio> = if given.is_empty() {
        defaults.iter().map(|&(a, b)| Ratio::new(a, b).unwrap()).collect()
    } else {
        given.iter().map(|s| parse_ratio(s)).collect::<Result<_, _>>()?
    };
    if nmin < 2 || nmin > nmax {
        return Err(Failure::usage("need 2 <= --nmin <= --nmax"));
    }

    let mut violations = 0;
    let mut n = nmin;
    while n <= nmax {
        let d = family.generate(n)?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ n as u64);
        let sampler = WeightedIndex::new(d.counts()).map_err(|e| Failure::usage(e.to_string()))?;
        let message: Vec<u32> = (0..len).map(|_| sampler.sample(&mut rng) as u32).collect();
        for &param in &params {
            let codec = Codec::build(&d, mode, param)?;
            let (report, _) = RunReport::measure(&codec, &d, &message)?;
            violations += !report.within_bound as usize;
            print_json(&BenchRecord { family: family.name(), seed, report });
        }
        n = match n.checked_mul(2) {
            Some(next) => next,
            None => break,
        };
    }
    if violations > 0 {
        return Err(Failure { code: EXIT_BOUND, message: format!("{violations} runs violated their bound") });
    }
    Ok(())
}
