mod commands;
mod report;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

pub const EXIT_UNKNOWN: u8 = 2;
pub const EXIT_USAGE: u8 = 64;
pub const EXIT_DATA: u8 = 65;
pub const EXIT_INTERNAL: u8 = 70;

#[derive(Parser)]
#[command(
    name = "hats",
    version,
    about = "Exact analysis of hat-guessing games on digraphs"
)]
pub struct Cli {
    /// Machine-readable output; errors go to stderr as JSON
    #[arg(long, global = true)]
    pub json: bool,
    /// Worker threads for the exhaustive search
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Classifiers first, exhaustive search if they give no answer
    Auto,
    /// Exhaustive search only
    Oracle,
    /// Reductions and classifiers only
    Classify,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
pub enum Command {
    /// Decide whether the sages can guarantee a correct guess
    Solve {
        file: String,
        #[arg(long)]
        budget_nodes: Option<u64>,
        #[arg(long)]
        budget_colorings: Option<u64>,
        /// Reproducible certificates even with several workers
        #[arg(long)]
        deterministic: bool,
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
        /// Write the winning strategy here
        #[arg(long)]
        certificate: Option<String>,
    },
    /// Decide using reductions and family classifiers only
    Classify { file: String },
    /// Check a strategy against every coloring
    Verify {
        file: String,
        #[arg(long)]
        strategy: String,
    },
    /// Apply the outcome-preserving reductions
    Reduce {
        file: String,
        /// Write the residual game here instead of stdout
        #[arg(long)]
        emit: Option<String>,
    },
    /// Build a game with a winning strategy from winnable inputs
    Construct {
        #[arg(long)]
        op: String,
        /// Input game files, comma separated
        #[arg(long = "in", value_delimiter = ',', required = true)]
        inputs: Vec<String>,
        /// Winning strategies for the inputs, comma separated; found by search if omitted
        #[arg(long, value_delimiter = ',')]
        strategies: Vec<String>,
        /// Operation parameters as key=value
        #[arg(long, num_args = 0..)]
        args: Vec<String>,
        /// Write the game here instead of stdout
        #[arg(long)]
        out: Option<String>,
        /// Write the strategy here
        #[arg(long)]
        strategy_out: Option<String>,
        /// Report the least hatness increment per vertex that makes the result unwinnable
        #[arg(long)]
        tightness: Option<u32>,
    },
    /// Local-lemma and Shearer-type unwinnability tests
    Bound {
        file: String,
        /// Weights for the local lemma, one per vertex, comma separated rationals
        #[arg(long, value_delimiter = ',')]
        weights: Vec<String>,
    },
    /// Evaluate the acyclicity polynomial at minus the weights on a subset
    Poly {
        file: String,
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<String>,
        /// Vertex names; all vertices if omitted
        #[arg(long, value_delimiter = ',')]
        subset: Vec<String>,
    },
    /// Pack prisms into a box with bounded overlap
    Pack {
        #[arg(long, value_delimiter = ',', required = true)]
        dims: Vec<u32>,
        #[arg(long, value_delimiter = ',', required = true)]
        prism: Vec<u32>,
        #[arg(long)]
        count: u32,
        #[arg(long)]
        overlap: u32,
    },
    /// Everything known about a game
    Report {
        file: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

/// A request that makes no sense for the given input.
#[derive(Debug)]
pub struct Usage(pub String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn exit_code(e: &anyhow::Error) -> (u8, &'static str) {
    if e.downcast_ref::<Usage>().is_some() || e.downcast_ref::<std::io::Error>().is_some() {
        return (EXIT_USAGE, "usage");
    }
    match e.downcast_ref::<hatgame::Error>() {
        Some(hatgame::Error::Budget(_)) => (EXIT_UNKNOWN, "budget"),
        Some(hatgame::Error::Hypothesis(_)) | Some(hatgame::Error::Unsupported(_)) => {
            (EXIT_USAGE, "usage")
        }
        Some(_) => (EXIT_DATA, "parse"),
        None => (EXIT_INTERNAL, "internal"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let json = cli.json;
    match commands::run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            let (code, kind) = exit_code(&e);
            if json {
                let body =
                    serde_json::json!({ "error": { "kind": kind, "message": format!("{e:#}") } });
                eprintln!("{body}");
            } else {
                eprintln!("hats: {e:#}");
            }
            ExitCode::from(code)
        }
    }
}
