use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use redic_cli::commands::{
    cmd_construct, cmd_exists, cmd_reduce, cmd_solve, cmd_table1, cmd_table2, cmd_verify,
};
use redic_cli::tables::TableOptions;
use redic_cli::{load_graph, CliError, CommandOutput, GraphFormat, GraphSource, EXIT_USAGE};
use redic_core::generators::read_graph6_stream;
use redic_core::solver::{Budget, SolveOptions};
use redic_core::{CodeKind, Graph};

/// Fault-tolerant identifying codes: verify, solve, enumerate, construct.
#[derive(Parser)]
#[command(name = "redic", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check a detector set.
    Verify {
        #[command(flatten)]
        graph: GraphArgs,
        /// Detector vertices, comma or space separated.
        #[arg(long, short = 'd')]
        detectors: String,
        #[arg(long, default_value = "red-ic")]
        kind: CodeKind,
    },
    /// Find a minimum code.
    Solve {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value = "red-ic")]
        kind: CodeKind,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Worker threads for the search (ignored with --deterministic).
        #[arg(long, default_value_t = 1)]
        threads: usize,
        /// Fixed exploration order: identical output on every run.
        #[arg(long)]
        deterministic: bool,
    },
    /// Decide whether any code exists.
    Exists {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value = "red-ic")]
        kind: CodeKind,
    },
    /// Tree statistics for n = 4..=MAX_N against the reference table.
    Table1 {
        #[arg(long, default_value_t = 13)]
        max_n: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Accepted for symmetry; table output is always deterministic.
        #[arg(long)]
        deterministic: bool,
    },
    /// Connected cubic graph statistics for even n = 6..=MAX_N.
    Table2 {
        #[arg(long, default_value_t = 14)]
        max_n: usize,
        /// graph6 files of connected cubic graphs used instead of generating
        /// the orders they contain.
        #[arg(long)]
        corpus: Vec<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, default_value_t = 0)]
        threads: usize,
        #[arg(long)]
        deterministic: bool,
    },
    /// Build an extremal instance with its witness.
    Construct {
        /// star-even, star-odd, cycle-odd, multipartite, tree, dense-ring,
        /// sparse-ring, q5 or q6.
        family: String,
        params: Vec<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Reduce a DIMACS 3-CNF formula to a RED:IC instance.
    Reduce {
        cnf: PathBuf,
        /// Also solve the instance and compare with brute-force SAT.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Args)]
struct GraphArgs {
    /// Graph file (`-` for stdin).
    #[arg(required_unless_present = "named")]
    input: Option<PathBuf>,
    /// Built-in family instead of a file, e.g. `ladder:5` or `torus:5,6`.
    #[arg(long, conflicts_with = "input")]
    named: Option<String>,
    #[arg(long, conflicts_with = "edgelist")]
    graph6: bool,
    #[arg(long)]
    edgelist: bool,
}

impl GraphArgs {
    fn source(&self) -> GraphSource {
        match (&self.named, &self.input) {
            (Some(spec), _) => GraphSource::Named(spec.clone()),
            (None, Some(path)) => {
                let format = if self.graph6 {
                    GraphFormat::Graph6
                } else if self.edgelist {
                    GraphFormat::EdgeList
                } else {
                    GraphFormat::Auto
                };
                GraphSource::File(path.clone(), format)
            }
            (None, None) => unreachable!("clap requires an input"),
        }
    }
}

#[derive(Args)]
struct BudgetArgs {
    #[arg(long)]
    budget_seconds: Option<f64>,
    #[arg(long)]
    budget_nodes: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> Result<Budget, CliError> {
        let time = match self.budget_seconds {
            Some(s) if !(s.is_finite() && s >= 0.0) => {
                return Err(CliError::Usage(format!("bad --budget-seconds {s}")))
            }
            s => s.map(Duration::from_secs_f64),
        };
        Ok(Budget {
            time,
            nodes: self.budget_nodes,
        })
    }
}

fn read_corpus(paths: &[PathBuf]) -> Result<Vec<(usize, Vec<Graph>)>, CliError> {
    let mut by_order: BTreeMap<usize, Vec<Graph>> = BTreeMap::new();
    for path in paths {
        let file = File::open(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let batch = read_graph6_stream(BufReader::new(file), true)?;
        for g in batch.graphs {
            by_order.entry(g.order()).or_default().push(g);
        }
    }
    Ok(by_order.into_iter().collect())
}

fn run(cli: &Cli) -> Result<CommandOutput, CliError> {
    match &cli.command {
        Command::Verify {
            graph,
            detectors,
            kind,
        } => cmd_verify(&load_graph(&graph.source())?, detectors, *kind),
        Command::Solve {
            graph,
            kind,
            budget,
            threads,
            deterministic,
        } => {
            let opts = SolveOptions {
                budget: budget.budget()?,
                deterministic: *deterministic || *threads <= 1,
                threads: *threads,
            };
            Ok(cmd_solve(&load_graph(&graph.source())?, *kind, &opts))
        }
        Command::Exists { graph, kind } => Ok(cmd_exists(&load_graph(&graph.source())?, *kind)),
        Command::Table1 {
            max_n,
            budget,
            threads,
            ..
        } => cmd_table1(
            *max_n,
            &TableOptions {
                budget: budget.budget()?,
                threads: *threads,
            },
        ),
        Command::Table2 {
            max_n,
            corpus,
            budget,
            threads,
            ..
        } => cmd_table2(
            *max_n,
            &read_corpus(corpus)?,
            &TableOptions {
                budget: budget.budget()?,
                threads: *threads,
            },
        ),
        Command::Construct {
            family,
            params,
            budget,
        } => cmd_construct(family, params, budget.budget()?),
        Command::Reduce { cnf, check, budget } => {
            cmd_reduce(cnf, check.then(|| budget.budget()).transpose()?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout(), "{}", out.render(cli.json).trim_end());
            ExitCode::from(out.code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE as u8)
        }
    }
}
