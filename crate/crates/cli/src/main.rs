use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod error;
mod price;
mod simulate;
mod verify;

use error::CliError;

/// Fair prices for recommendations and reward curves for trust-decaying
/// recommenders.
#[derive(Debug, Parser)]
#[command(name = "fairprice", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Divide a game's worth and turn the payoffs into prices.
    Price(PriceArgs),
    /// Expected cumulative reward curves of recommending policies, as CSV.
    Simulate(SimulateArgs),
    /// Run a bundled self-check suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct PriceArgs {
    /// Game or argument-game specification (JSON).
    #[arg(long)]
    game: PathBuf,
    /// Comma-separated methods: shapley, anon-shapley, nash, core-check,
    /// core-nonempty.
    #[arg(long, default_value = "shapley")]
    method: String,
    /// per-recommendation or per-sale.
    #[arg(long, default_value = "per-recommendation")]
    payment: String,
    /// Payoff vector for core-check, as `id=value,...`; unlisted players get 0.
    #[arg(long)]
    payoff: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Initial (and maximal) success probability.
    #[arg(long, default_value = "0.5")]
    p0: String,
    /// Loss rate applied after a failed recommendation.
    #[arg(long, default_value = "0.66")]
    l: String,
    /// Recovery factor applied after a skipped product.
    #[arg(long, default_value = "1")]
    g: String,
    /// Reward per successful recommendation.
    #[arg(long, default_value = "1")]
    r: String,
    /// Number of products.
    #[arg(long, default_value_t = 200)]
    n: usize,
    /// Comma-separated policies: all, every-k:<k>, optimal.
    #[arg(long, default_value = "all")]
    policy: String,
    /// A success restores trust to p0 (the default).
    #[arg(long, overrides_with = "no_reset")]
    reset: bool,
    /// A success leaves trust unchanged.
    #[arg(long, overrides_with = "reset")]
    no_reset: bool,
    /// Add Monte Carlo columns.
    #[arg(long)]
    mc: bool,
    /// Monte Carlo trials.
    #[arg(long, default_value_t = 100_000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Truncation tolerance for the limits reported on stderr.
    #[arg(long, default_value_t = 1e-12)]
    tol: f64,
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write one file per policy next to --out instead of one long file.
    #[arg(long, requires = "out")]
    split: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    /// bounds, truthfulness, figure2, core-laws, shapley-axioms or all.
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Monte Carlo trials for the figure2 cross-checks.
    #[arg(long, default_value_t = 100_000)]
    trials: usize,
    /// Output file (default: stdout).
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Price(args) => price::run(&args),
        Command::Simulate(args) => simulate::run(&args),
        Command::Verify(args) => verify::run(&args),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Writes `text` to `out`, or to stdout.
fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    use std::io::Write;
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Output(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|e| CliError::Output(format!("stdout: {e}")))
        }
    }
}
