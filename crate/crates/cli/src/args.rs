//! Command-line argument parsing for the `bicomplex` binary.

use std::ffi::OsString;

use bicomplex::BranchIndex;
use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::{Command, OutputFormat, RunConfig};

/// Convergence reports for bicomplex sequences, series and infinite products.
///
/// EXPR is a term a_n in the index n, e.g. "1 + (0.3 + 0.4*i2)/n^2".
/// Constants: i1 i2 j e1 e2 pi. Functions: exp log sqrt. "[a | b]" is
/// a*e1 + b*e2.
#[derive(Parser)]
#[command(name = "bicomplex", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print a_N in four-real and idempotent form.
    Eval(PointArgs),
    /// Analyze sum_{n>=1} a_n.
    Series(AnalysisArgs),
    /// Analyze prod_{n>=1} a_n.
    Product(AnalysisArgs),
    /// Check ||w||/2 <= ||Log(1 + w)|| <= 3||w||/2 for w = a_N - 1.
    CheckBounds(PointArgs),
}

#[derive(Args)]
struct Common {
    expr: String,
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    output: Format,
    /// Shorthand for --output json.
    #[arg(long)]
    json: bool,
    /// Evaluate log(...) on branch M,N (shift 2 pi (M i1 + N i2)).
    #[arg(long, value_parser = parse_branch, allow_hyphen_values = true, value_name = "M,N")]
    branch: Option<BranchIndex>,
    /// Exit 1 unless the result is converged (or both bounds hold).
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct PointArgs {
    #[command(flatten)]
    common: Common,
    /// Index at which to evaluate the term.
    #[arg(long, default_value_t = 1)]
    at: u64,
}

#[derive(Args)]
struct AnalysisArgs {
    #[command(flatten)]
    common: Common,
    /// Cauchy-window tolerance.
    #[arg(long, default_value_t = 1e-10)]
    tol: f64,
    /// Number of trailing partial results compared.
    #[arg(long, default_value_t = 8)]
    window: usize,
    /// Term budget.
    #[arg(long, default_value_t = 1_000_000)]
    max_terms: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

fn parse_branch(s: &str) -> Result<BranchIndex, String> {
    let (m, n) = s.split_once(',').ok_or("expected M,N")?;
    let int = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("'{t}': {e}"));
    Ok(BranchIndex::new(int(m)?, int(n)?))
}

fn config(command: Command, c: Common) -> RunConfig {
    let mut cfg = RunConfig::new(command, c.expr);
    cfg.output = match (c.json, c.output) {
        (true, _) | (_, Format::Json) => OutputFormat::Json,
        _ => OutputFormat::Text,
    };
    cfg.branch = c.branch;
    cfg.strict = c.strict;
    cfg
}

/// Parses a full argument list, program name first, as the binary does.
pub fn parse_args<I, T>(args: I) -> Result<RunConfig, clap::Error>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(args)?;
    Ok(match cli.command {
        Cmd::Eval(p) => RunConfig { at: p.at, ..config(Command::Eval, p.common) },
        Cmd::CheckBounds(p) => RunConfig { at: p.at, ..config(Command::CheckBounds, p.common) },
        Cmd::Series(a) => analysis(Command::Series, a),
        Cmd::Product(a) => analysis(Command::Product, a),
    })
}

fn analysis(command: Command, a: AnalysisArgs) -> RunConfig {
    RunConfig {
        tol: a.tol,
        window: a.window,
        max_terms: a.max_terms,
        ..config(command, a.common)
    }
}
