use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cryptologic::InnerMode;
use cryptologic_cli::commands::{run, Command, Options};
use cryptologic_cli::report::Report;
use cryptologic_cli::spec::parse_probability;

/// Check probabilistic-epistemic triples, security games and
/// muddy-children runs described by JSON spec files.
#[derive(Parser)]
#[command(name = "cryptologic", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a schema's queries, or a system's it_sec game.
    Check(Common),
    /// Play a cpa or cca game with a builtin attacker.
    Game(Common),
    /// Simulate a muddy-children run.
    Muddy(Common),
    /// Evaluate one named query of a schema spec.
    Eval {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        query: String,
    },
}

#[derive(Args)]
struct Common {
    /// Path to the JSON spec.
    spec: PathBuf,
    /// Print only the machine-readable report.
    #[arg(long)]
    json: bool,
    /// Refuse to enumerate more states than this.
    #[arg(long, value_name = "N")]
    max_states: Option<usize>,
    /// Probability that the challenge bit is 1, as num/den.
    #[arg(long, value_name = "NUM/DEN")]
    coin_bias: Option<String>,
    /// How triples nested under W and K are read.
    #[arg(long, value_enum, default_value_t = Mode::Local)]
    inner_mode: Mode,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Local,
    Objective,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, common) = match cli.command {
        Cmd::Check(c) => (Command::Check, c),
        Cmd::Game(c) => (Command::Game, c),
        Cmd::Muddy(c) => (Command::Muddy, c),
        Cmd::Eval { common, query } => (Command::Eval { query }, common),
    };
    let start = Instant::now();
    let report = match options(&common) {
        Ok(opts) => run(&command, &common.spec, &opts),
        Err(message) => Report::failure(command.name(), None, message),
    };
    if common.json {
        print!("{}", report.to_json());
    } else {
        print!("{}", report.to_human());
        println!("time: {:.1} ms", start.elapsed().as_secs_f64() * 1000.0);
        if let Some(error) = &report.error {
            eprintln!("cryptologic: {error}");
        }
    }
    ExitCode::from(report.exit_code() as u8)
}

fn options(common: &Common) -> Result<Options, String> {
    let mut opts = Options::default();
    if let Some(n) = common.max_states {
        opts.max_states = n;
    }
    if let Some(text) = &common.coin_bias {
        opts.coin_bias = Some(parse_probability(text, "--coin-bias").map_err(|e| e.to_string())?);
    }
    opts.inner_mode = match common.inner_mode {
        Mode::Local => InnerMode::AgentLocal,
        Mode::Objective => InnerMode::Objective,
    };
    Ok(opts)
}
