use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use autoeval::cost::Method;
use autoeval::FieldContext;
use clap::{Args, Parser, Subcommand, ValueEnum};

mod bench;
mod eval_file;
mod rs_demo;
mod verify;

const SEED_HELP: &str = "Seed for all sampled polynomials and points. Sampling uses ChaCha8 \
seeded with this value; the k-th degree in --degrees draws from stream k, so the output \
depends only on the seed and the flags, never on thread count.";
const RS_SEED_HELP: &str = "Seed for the random words and codewords. Sampling uses ChaCha8 \
seeded with this value on stream 0; the words are drawn in order.";

/// Polynomial evaluation over finite fields with Frobenius-based schemes
/// and exact operation counts.
#[derive(Parser)]
#[command(name = "autoeval", version, about)]
#[command(after_help = "Exit status: 0 success, 1 verification failure, 2 usage error.\n\
Set AUTOEVAL_THREADS to cap the worker threads.")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check every evaluator against Horner's rule on random instances.
    Verify(VerifyArgs),
    /// Tabulate predicted and measured multiplication counts as CSV.
    Bench(BenchArgs),
    /// Reed-Solomon [255,223,33] syndrome demo over GF(2^8).
    Rs(RsArgs),
    /// Evaluate a polynomial read from a file.
    Eval(EvalArgs),
}

#[derive(Args)]
struct FieldArgs {
    /// Field spec `p=<p>,m=<m>[,mod=<coefficients, highest first>]`.
    #[arg(long, value_parser = parse_field)]
    field: FieldContext,
    /// Degree s of the coefficient subfield F_{p^s}; must divide m.
    #[arg(long = "coeff-degree", default_value_t = 1)]
    coeff_degree: usize,
    /// Comma-separated polynomial degrees.
    #[arg(long, value_delimiter = ',', required = true)]
    degrees: Vec<usize>,
    #[arg(long, default_value_t = 0, long_help = SEED_HELP)]
    seed: u64,
}

#[derive(Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Random instances per degree.
    #[arg(long, default_value_t = 100)]
    trials: usize,
}

#[derive(Args)]
pub struct BenchArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Comma-separated methods: direct, horner, m1, m2, ext_basis, ext_m2.
    /// Defaults to every method applicable to the coefficient subfield.
    #[arg(long, value_delimiter = ',')]
    methods: Vec<Method>,
    /// Worst-case instances per degree; the largest count is reported.
    #[arg(long, default_value_t = 1)]
    trials: usize,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Fill the wall_ns column with measured times (makes the CSV
    /// nondeterministic).
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Demo {
    /// Uniformly random received words.
    Random,
    /// The fixed word on which every scheduled product is counted.
    Worstcase,
    /// Random codewords message·g(x).
    Codeword,
}

#[derive(Args)]
pub struct RsArgs {
    #[arg(long, value_enum, default_value = "worstcase")]
    demo: Demo,
    /// Number of words K.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    words: u64,
    #[arg(long, default_value_t = 0, long_help = RS_SEED_HELP)]
    seed: u64,
    /// Cost report destination (CSV stage,muls,adds).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Received word file (255 lines of hex bytes); prints its syndromes
    /// instead of running a demo.
    #[arg(long, conflicts_with = "demo")]
    input: Option<PathBuf>,
}

#[derive(Args)]
pub struct EvalArgs {
    /// Polynomial file: header `p=<p> s=<s> m=<m> mod=<list>`, then one
    /// coefficient per line from x^0 up.
    #[arg(long)]
    poly: PathBuf,
    /// Evaluation point in canonical form; defaults to the field generator.
    #[arg(long)]
    point: Option<String>,
    /// Method to run; the cheapest predicted plan when absent.
    #[arg(long)]
    method: Option<Method>,
    /// Decomposition depth; the optimal depth when absent.
    #[arg(long)]
    depth: Option<u32>,
}

fn parse_field(spec: &str) -> Result<FieldContext, String> {
    FieldContext::from_spec(spec).map_err(|e| e.to_string())
}

/// Invalid combinations of otherwise well-formed flags.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn configure_threads() -> anyhow::Result<()> {
    let Ok(value) = std::env::var("AUTOEVAL_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .parse()
        .map_err(|_| UsageError(format!("AUTOEVAL_THREADS={value:?} is not a number")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .context("configuring the thread pool")
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    configure_threads()?;
    match cli.command {
        Command::Verify(args) => verify::run(&args),
        Command::Bench(args) => bench::run(&args),
        Command::Rs(args) => rs_demo::run(&args),
        Command::Eval(args) => eval_file::run(&args),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            if err.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}

/// Subfield for `s`, or `None` for the prime field.
pub fn subfield(ctx: &FieldContext, s: usize) -> anyhow::Result<Option<autoeval::Subfield>> {
    if s == 1 {
        return Ok(None);
    }
    autoeval::Subfield::new(ctx, s)
        .map(Some)
        .map_err(|e| UsageError(format!("--coeff-degree {s}: {e}")).into())
}

/// Generator for the k-th degree of a run.
pub fn degree_rng(seed: u64, k: usize) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k as u64);
    rng
}

/// Methods applicable to coefficients in F_{p^s}.
pub fn default_methods(s: usize) -> Vec<Method> {
    Method::ALL
        .into_iter()
        .filter(|m| {
            if s > 1 {
                !matches!(m, Method::M1 | Method::M2)
            } else {
                !m.needs_extension()
            }
        })
        .collect()
}

/// The depth a method runs at for degree n: the cost model's optimum.
pub fn plan_depth(method: Method, p: u64, s: usize, n: usize) -> u32 {
    if method.has_depth() {
        autoeval::cost::lopt(method, p, s as u32, n as u64).depth
    } else {
        0
    }
}
