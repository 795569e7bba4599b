//! `maxlin`: command-line access to recursive max-linear model analyses.
//!
//! Exit codes: 0 ok or valid, 1 invalid verdict, 2 input error, 3 graph
//! error (cycle, self-loop, duplicate edge), 4 matrix-validation error.

mod commands;
mod input;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use maxlin_core::{NodeSet, Rational};

use crate::commands::Outcome;

#[derive(Parser, Debug)]
#[command(name = "maxlin", version, about = "Analyse recursive max-linear models on DAGs")]
pub struct Cli {
    /// Use exact rational arithmetic for every computation.
    #[arg(long, global = true)]
    pub rational: bool,

    /// Write the main output to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MatrixFormat {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GraphFormat {
    Dot,
    Edges,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Coefficient matrix B of a model.
    ComputeB {
        model: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: MatrixFormat,
    },
    /// Minimum ML DAG of a model file or of a coefficient matrix.
    MinDag {
        input: PathBuf,
        #[arg(long, value_enum, default_value = "dot")]
        format: GraphFormat,
    },
    /// Checks whether a matrix is an ML coefficient matrix, optionally on a
    /// given DAG.
    Validate {
        b: PathBuf,
        #[arg(long)]
        dag: Option<PathBuf>,
        /// Print diagnostics as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Minimal representation of X_i given the components in U.
    Represent {
        b: PathBuf,
        #[arg(long)]
        node: usize,
        #[arg(long, default_value = "", value_parser = parse_nodes)]
        given: NodeSet,
        /// Represent X_i through its parents in the minimum ML DAG instead.
        #[arg(long, conflicts_with = "given")]
        parents: bool,
    },
    /// Bounds on X_i from observed components.
    Bounds {
        b: PathBuf,
        #[arg(long)]
        node: usize,
        #[arg(long, default_value = "", value_parser = parse_nodes)]
        given: NodeSet,
        /// JSON object mapping node labels to observed values.
        #[arg(long)]
        values: Option<PathBuf>,
    },
    /// Polytree of max-weighted paths into a node.
    Polytree {
        model: PathBuf,
        #[arg(long)]
        node: usize,
        #[arg(long, value_enum, default_value = "dot")]
        format: GraphFormat,
    },
    /// Every DAG that represents B, with its admissible weights.
    Admissible {
        b: PathBuf,
        #[arg(long, default_value_t = maxlin_core::DEFAULT_ADMISSIBLE_CAP)]
        cap: usize,
    },
    /// Samples noise and evaluates the model; writes CSV.
    Simulate {
        model: PathBuf,
        #[arg(long, default_value_t = 1000)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// frechet[:alpha], uniform01 or exponential[:lambda].
        #[arg(long, default_value = "frechet:1")]
        dist: String,
        /// Also write reproducibility metadata as JSON.
        #[arg(long, value_name = "FILE")]
        metadata: Option<PathBuf>,
    },
}

fn parse_nodes(s: &str) -> Result<NodeSet, String> {
    s.parse().map_err(|e: maxlin_core::Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = if cli.rational {
        commands::run::<Rational>(&cli)
    } else {
        commands::run::<f64>(&cli)
    };
    match result {
        Ok(Outcome { text, code }) => {
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
                None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
