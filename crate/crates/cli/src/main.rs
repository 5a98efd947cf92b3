//! `cliquemdl`: clique significance tests by description length.
//!
//! Exit codes: 0 ran to completion (the verdict is in the report, not the
//! exit code), 2 usage error, 3 input error, 4 verification gate failure.

mod commands;
mod labels;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cliquemdl::NullModel;

use crate::report::Format;

#[derive(Debug, Parser)]
#[command(
    name = "cliquemdl",
    version,
    about = "Test whether cliques in a graph are significant under a null model"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report null-model and clique-code codelengths for a graph.
    Codelength(CodelengthArgs),
    /// Search for cliques and test the best one against the null model.
    Test(TestArgs),
    /// Check the no-hypercompression bound by Monte Carlo under the null.
    McVerify(McVerifyArgs),
    /// Write edge-list samples drawn from a null model.
    Sample(SampleArgs),
    /// Print the JSON schema of the reports.
    Schema,
}

#[derive(Debug, Clone, Args)]
struct GraphInput {
    /// Edge-list file, or '-' for standard input.
    file: PathBuf,
    /// Treat node tokens as arbitrary labels instead of dense indices.
    #[arg(long)]
    labels: bool,
}

#[derive(Debug, Args)]
struct CodelengthArgs {
    #[command(flatten)]
    input: GraphInput,
    /// Null model(s): uniform, gnm or gnp:<p>; comma-separated for several.
    #[arg(long, value_parser = parse_models)]
    model: Models,
    /// Clique to encode, as comma-separated nodes.
    #[arg(long)]
    clique: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SearchKind {
    Greedy,
    Exact,
}

#[derive(Debug, Args)]
struct TestArgs {
    #[command(flatten)]
    input: GraphInput,
    #[arg(long, value_parser = parse_models)]
    model: Models,
    /// Significance level in (0, 1].
    #[arg(long, default_value_t = 0.001)]
    alpha: f64,
    #[arg(long, value_enum, default_value_t = SearchKind::Greedy)]
    search: SearchKind,
    /// Greedy restarts [default: number of nodes].
    #[arg(long)]
    seeds: Option<usize>,
    /// Seed for restarts beyond the first pass over the nodes (decimal or 0x-hex).
    #[arg(long, value_parser = parse_seed, default_value = "0")]
    seed: u64,
    /// Refuse exact search above this many nodes.
    #[arg(long, default_value_t = cliquemdl::search::DEFAULT_MAX_EXACT_N)]
    max_exact_n: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Args)]
struct McVerifyArgs {
    #[arg(long, value_parser = parse_models)]
    model: Models,
    /// Nodes per sampled graph.
    #[arg(long, default_value_t = 20)]
    n: usize,
    /// Edge count for gnm samples [default: half the node pairs].
    #[arg(long)]
    m: Option<u64>,
    #[arg(long, default_value_t = 100_000)]
    samples: usize,
    /// Thresholds in bits: a range such as 1..8 and/or a comma list.
    #[arg(long, value_parser = parse_ks, default_value = "1..8")]
    ks: Thresholds,
    /// Greedy restarts per sample [default: n].
    #[arg(long)]
    greedy_seeds: Option<usize>,
    #[arg(long, value_parser = parse_seed, default_value = "0")]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(long, value_parser = parse_model)]
    model: NullModel,
    #[arg(long)]
    n: usize,
    /// Edge count (gnm only).
    #[arg(long)]
    m: Option<u64>,
    #[arg(long, default_value_t = 1)]
    count: usize,
    #[arg(long, value_parser = parse_seed, default_value = "0")]
    seed: u64,
    #[arg(long)]
    out_dir: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Debug, Clone)]
struct Models(Vec<NullModel>);

#[derive(Debug, Clone)]
struct Thresholds(Vec<f64>);

fn parse_model(s: &str) -> Result<NullModel, String> {
    s.parse().map_err(|e: cliquemdl::Error| e.to_string())
}

fn parse_models(s: &str) -> Result<Models, String> {
    s.split(',')
        .map(parse_model)
        .collect::<Result<_, _>>()
        .map(Models)
}

fn parse_seed(s: &str) -> Result<u64, String> {
    let s = s.trim();
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|_| format!("'{s}' is not a 64-bit decimal or 0x-hex seed"))
}

fn parse_ks(s: &str) -> Result<Thresholds, String> {
    let mut ks = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        if let Some((lo, hi)) = part.split_once("..") {
            let lo: u32 = lo
                .parse()
                .map_err(|_| format!("bad range start in '{part}'"))?;
            let hi: u32 = hi
                .parse()
                .map_err(|_| format!("bad range end in '{part}'"))?;
            if lo > hi {
                return Err(format!("empty range '{part}'"));
            }
            ks.extend((lo..=hi).map(f64::from));
        } else {
            let k: f64 = part
                .parse()
                .map_err(|_| format!("bad threshold '{part}'"))?;
            if !k.is_finite() || k < 0.0 {
                return Err(format!("threshold '{part}' must be a non-negative number"));
            }
            ks.push(k);
        }
    }
    Ok(Thresholds(ks))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::dispatch(cli.command) {
        Ok(outcome) => {
            print!("{}", outcome.output);
            if outcome.gate_failed {
                eprintln!("error: verification gate failed");
                ExitCode::from(4)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(failure) => {
            eprintln!("error: {failure}");
            ExitCode::from(failure.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_accept_decimal_and_hex() {
        assert_eq!(parse_seed("42").unwrap(), 42);
        assert_eq!(parse_seed("0xff").unwrap(), 255);
        assert_eq!(parse_seed("0xFFFFFFFFFFFFFFFF").unwrap(), u64::MAX);
        assert!(parse_seed("0x1FFFFFFFFFFFFFFFF").is_err());
        assert!(parse_seed("-1").is_err());
    }

    #[test]
    fn thresholds() {
        assert_eq!(
            parse_ks("1..8").unwrap().0,
            (1..=8).map(f64::from).collect::<Vec<_>>()
        );
        assert_eq!(parse_ks("0.5,2..3").unwrap().0, vec![0.5, 2.0, 3.0]);
        assert!(parse_ks("3..1").is_err());
        assert!(parse_ks("-1").is_err());
    }

    #[test]
    fn model_lists() {
        assert_eq!(parse_models("uniform,gnp:0.5,gnm").unwrap().0.len(), 3);
        assert!(parse_models("uniform,ba").is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
