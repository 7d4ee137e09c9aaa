use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use formdepth::cli::{run, run_json, Command, Outcome, Overrides};

#[derive(Parser)]
#[command(name = "formdepth", version, about = "Depth and free resolutions of gradient ideals of products of forms")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Subcommand)]
enum Sub {
    /// Run the job file's own command (default: rty)
    Analyze(Common),
    /// Classify a product of two smooth conics
    Classify2q(Common),
    /// Generic hyperplane arrangement checks
    Arrangement(Common),
    /// Predicted Betti table, compared with the computed one when forms are given
    BettiPredict(Common),
    /// Reduction number of J in I
    Reduction(Common),
    /// Sufficient criteria for depth zero
    Criteria(Common),
    /// Seeded randomized verification suites
    Verify(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Common {
    /// Job file (JSON)
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    rmax: Option<u32>,
    /// arrangements, general-forms, criteria, conics or engine
    #[arg(long)]
    suite: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common) = match cli.command {
        Sub::Analyze(c) => (None, c),
        Sub::Classify2q(c) => (Some(Command::Classify2q), c),
        Sub::Arrangement(c) => (Some(Command::Arrangement), c),
        Sub::BettiPredict(c) => (Some(Command::BettiPredict), c),
        Sub::Reduction(c) => (Some(Command::Reduction), c),
        Sub::Criteria(c) => (Some(Command::Criteria), c),
        Sub::Verify(c) => (Some(Command::VerifySuite), c),
    };
    let ov = Overrides { seed: common.seed, trials: common.trials, r_max: common.rmax, suite: common.suite.clone() };
    let outcome = match &common.input {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => run_json(&text, command, &ov),
            Err(e) => {
                eprintln!("formdepth: cannot read {}: {e}", path.display());
                return ExitCode::from(2);
            }
        },
        None => run(command, None, &ov),
    };
    emit(&outcome, common.format);
    ExitCode::from(outcome.exit_code as u8)
}

fn emit(outcome: &Outcome, format: Format) {
    if let Some(e) = &outcome.report.error {
        eprintln!("formdepth: {}", e.message);
    }
    match format {
        Format::Json => println!("{}", outcome.report.to_json()),
        Format::Text => print!("{}", outcome.report.to_text()),
    }
}
