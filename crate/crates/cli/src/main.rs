use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod commands;
mod config;

use config::{parse_letters, Overrides, RunConfig};

#[derive(Debug)]
pub enum Failure {
    /// Bad input: exit code 2.
    Config(String),
    /// A check did not hold: exit code 1.
    Check(String),
}

#[derive(Parser)]
#[command(name = "gkm", version, about = "Exact GKM computations for Bott-Samelson varieties")]
struct Cli {
    /// Run configuration (JSON, or TOML with a .toml extension).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Characteristics, e.g. `0,2,3`.
    #[arg(long = "char", global = true, value_delimiter = ',')]
    chars: Option<Vec<u64>>,
    /// Maximum word length for `verify`.
    #[arg(long, global = true)]
    verify_depth: Option<usize>,
    /// Write JSON output here (`scan` appends JSON lines).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Root datum name such as `A2` or `A1xC2`.
    #[arg(long, global = true)]
    datum: Option<String>,
    /// Word as comma separated simple reflection indices.
    #[arg(long, global = true)]
    word: Option<String>,
    /// Endpoint `x` as a word; `e` for the identity.
    #[arg(long, global = true)]
    x: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the galleries over `x` in order, with J, D and a(gamma).
    Galleries,
    /// Print a basis family (`basis` in the config: b, c, rho or xi).
    Basis,
    /// Run the property suite on all words up to the verify depth.
    Verify,
    /// Graded defect of the fiber over `x` for each characteristic.
    Defect,
    /// Multiplicities m(x, d) for each characteristic.
    Multiplicities,
    /// Reproduce the A7 torsion example and compare with stored values.
    Braden,
    /// Defects for many words and endpoints, as JSON lines.
    Scan,
}

fn load(cli: &Cli) -> Result<RunConfig, Failure> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let letters = |flag: &str, v: &Option<String>| {
        v.as_deref().map(parse_letters).transpose().map_err(|e| Failure::Config(format!("--{flag}: {e}")))
    };
    cfg.apply(Overrides {
        characteristics: cli.chars.clone(),
        verify_depth: cli.verify_depth,
        out: cli.out.clone(),
        datum: cli.datum.clone(),
        word: letters("word", &cli.word)?,
        x: letters("x", &cli.x)?,
    });
    Ok(cfg)
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let cfg = load(cli)?;
    let out = match cli.command {
        Command::Galleries => commands::galleries(&cfg),
        Command::Basis => commands::basis(&cfg),
        Command::Verify => commands::verify(&cfg),
        Command::Defect => commands::defect(&cfg),
        Command::Multiplicities => commands::multiplicities(&cfg),
        Command::Braden => {
            if let Some(c) = &cfg.characteristics {
                // The example has a fixed field list; reject a silent mismatch.
                return Err(Failure::Config(format!("braden does not take characteristics (got {c:?})")));
            }
            commands::braden_cmd()
        }
        Command::Scan => commands::scan(&cfg),
    }?;
    let text = serde_json::to_string_pretty(&out.json).expect("serializable");
    if cli.json {
        println!("{text}");
    } else {
        print!("{}", out.human);
    }
    if let (Some(path), false) = (&cfg.out, matches!(cli.command, Command::Scan)) {
        std::fs::write(path, text + "\n").map_err(|e| Failure::Config(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(out.ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Config(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
    }
}
