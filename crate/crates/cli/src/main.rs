//! `biolink`: runs one simulation pipeline and writes its CSV.

use std::path::PathBuf;
use std::process::ExitCode;

use biolink_core::harness::{self, RunConfig, Subcommand, KEYS};
use biolink_core::seed::DEFAULT_SEED;
use clap::{Args, CommandFactory, FromArgMatches, Parser};

#[derive(Parser, Debug)]
#[command(name = "biolink", version, about = "Inductive biomote link, PHY and MAC simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Subcommand, Debug)]
enum Command {
    LinkSweep(Common),
    Table1(Common),
    BerSweep(Common),
    MacScenario1(Common),
    MacScenario2(Common),
    MacCdma(Common),
    MacCompare(Common),
}

#[derive(Args, Debug)]
struct Common {
    /// Parameter file (key = value lines); defaults apply when omitted.
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// CSV destination; standard output when omitted.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Master seed, decimal or 0x-prefixed hex.
    #[arg(long, env = "BIOLINK_SEED", value_parser = parse_seed)]
    seed: Option<u64>,
    /// Override one parameter; repeatable.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed '{s}': {e}"))
}

impl Command {
    fn split(self) -> (Subcommand, Common) {
        match self {
            Command::LinkSweep(c) => (Subcommand::LinkSweep, c),
            Command::Table1(c) => (Subcommand::Table1, c),
            Command::BerSweep(c) => (Subcommand::BerSweep, c),
            Command::MacScenario1(c) => (Subcommand::MacScenario1, c),
            Command::MacScenario2(c) => (Subcommand::MacScenario2, c),
            Command::MacCdma(c) => (Subcommand::MacCdma, c),
            Command::MacCompare(c) => (Subcommand::MacCompare, c),
        }
    }
}

fn schema_help() -> String {
    let mut s = String::from("CSV columns:\n");
    for sub in Subcommand::ALL {
        s += &format!("  {:<14} {}\n", sub.name(), sub.columns().join(","));
    }
    s += "\nConfig keys (also accepted by --set):\n";
    for (key, about) in KEYS {
        s += &format!("  {key:<24} {about}\n");
    }
    s += "\nExit status: 0 ok, 2 configuration error, 3 runtime error.";
    s
}

fn command() -> clap::Command {
    let mut cmd = Cli::command().after_long_help(schema_help());
    for sub in Subcommand::ALL {
        cmd = cmd.mut_subcommand(sub.name(), |c| {
            c.about(sub.about()).after_help(format!("CSV columns: {}", sub.columns().join(",")))
        });
    }
    cmd
}

fn main() -> ExitCode {
    let matches = command().get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let (subcommand, common) = cli.command.split();
    let cfg = RunConfig {
        subcommand,
        config_path: common.config,
        output_path: common.out,
        seed: common.seed.unwrap_or(DEFAULT_SEED),
        overrides: common.set,
    };
    let result = match &cfg.output_path {
        Some(_) => harness::run_to_file(&cfg).map(|_| ()),
        None => harness::run(&cfg).map(|csv| print!("{csv}")),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("biolink: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
