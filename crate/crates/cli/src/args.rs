use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use copmine::series::{ColumnSelector, InputFormat};
use copmine::{Algorithm, NumericSeries, Prefix, RankPattern};

/// Mine co-occurrence order-preserving patterns from numeric time series.
#[derive(Debug, Parser)]
#[command(name = "copmine", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the keypoint (local extrema) series.
    Keypoints(KeypointsArgs),
    /// Mine every frequent pattern extending the prefix.
    Mine(MineArgs),
    /// Predict the next trend on a held-out tail and score the prediction.
    Predict(PredictArgs),
    /// Time and count work for each algorithm on repeated copies of the input.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Series file, or `-` for stdin.
    #[arg(long)]
    pub input: PathBuf,

    #[arg(long, value_enum, default_value = "plain")]
    pub format: Format,

    /// CSV column by header name or 0-based index.
    #[arg(long, default_value = "0")]
    pub column: String,

    /// Write to FILE instead of stdout.
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

impl InputArgs {
    pub fn input_format(&self) -> InputFormat {
        match self.format {
            Format::Plain => InputFormat::Plain,
            Format::Csv => {
                let column: ColumnSelector = self.column.parse().unwrap_or_else(|e| match e {});
                InputFormat::Csv(column)
            }
        }
    }
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct PrefixArgs {
    /// Prefix as raw values, e.g. 5,3,7,13,8.
    #[arg(long, value_name = "V1,V2,...", allow_hyphen_values = true, value_parser = parse_values)]
    pub prefix: Option<NumericSeries>,

    /// Prefix as ranks, e.g. 2,1,4,3.
    #[arg(long, value_name = "R1,R2,...", value_parser = parse_ranks)]
    pub prefix_ranks: Option<RankPattern>,
}

impl PrefixArgs {
    pub fn prefix(&self) -> Prefix {
        match (&self.prefix, &self.prefix_ranks) {
            (Some(values), _) => Prefix::Values(values.clone()),
            (None, Some(ranks)) => Prefix::Ranks(ranks.clone()),
            (None, None) => unreachable!("clap enforces one prefix"),
        }
    }
}

#[derive(Debug, Args)]
pub struct KeypointsArgs {
    #[command(flatten)]
    pub input: InputArgs,

    /// Prepend the 1-based source position to each value.
    #[arg(long)]
    pub with_index: bool,

    /// Emit JSON or CSV instead of one value per line.
    #[arg(long, value_enum)]
    pub output: Option<Output>,
}

#[derive(Debug, Args)]
pub struct MineArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[command(flatten)]
    pub prefix: PrefixArgs,

    #[arg(long, value_parser = parse_count)]
    pub minsup: usize,

    #[arg(long, value_parser = parse_algorithm, default_value = "copminer")]
    pub algo: Algorithm,

    /// Mine the raw series without keypoint extraction.
    #[arg(long)]
    pub no_keypoints: bool,

    #[arg(long, value_enum, default_value = "json")]
    pub output: Output,

    /// Include intermediate occurrence lists and fusion tables.
    #[arg(long)]
    pub trace: bool,
}

#[derive(Debug, Args)]
pub struct PredictArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[command(flatten)]
    pub prefix: PrefixArgs,

    /// Training-side support threshold.
    #[arg(long, default_value_t = 1, value_parser = parse_count)]
    pub minsup: usize,

    /// Fraction of the series used for training.
    #[arg(long, default_value_t = 0.8)]
    pub ratio: f64,

    #[arg(long, default_value_t = 2, value_parser = parse_count)]
    pub top_k: usize,

    /// Predicted steps past the prefix.
    #[arg(long, default_value_t = 1, value_parser = parse_count)]
    pub horizon: usize,

    #[arg(long)]
    pub no_keypoints: bool,

    #[arg(long, value_enum, default_value = "json")]
    pub output: Output,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub input: InputArgs,

    #[command(flatten)]
    pub prefix: PrefixArgs,

    #[arg(long, value_parser = parse_count)]
    pub minsup: usize,

    /// Algorithms to run; repeat the flag or separate with commas. Default: all.
    #[arg(long, value_parser = parse_algorithm, value_delimiter = ',')]
    pub algo: Vec<Algorithm>,

    /// Repeat factors; the series is concatenated R times.
    #[arg(long, value_delimiter = ',', default_value = "1", value_parser = parse_count)]
    pub repeat: Vec<usize>,

    /// Multiply minsup by each repeat factor.
    #[arg(long)]
    pub scale_minsup: bool,

    /// Timed runs per cell; the fastest is reported.
    #[arg(long, default_value_t = 3, value_parser = parse_count)]
    pub runs: usize,

    #[arg(long)]
    pub no_keypoints: bool,

    #[arg(long, value_enum, default_value = "csv")]
    pub output: Output,
}

fn parse_values(s: &str) -> Result<NumericSeries, String> {
    let values = s
        .split(',')
        .map(|tok| {
            tok.trim()
                .parse::<f64>()
                .map_err(|_| format!("cannot parse {:?} as a number", tok.trim()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    NumericSeries::new(values).map_err(|e| e.to_string())
}

fn parse_ranks(s: &str) -> Result<RankPattern, String> {
    s.parse().map_err(|e: copmine::Error| e.to_string())
}

fn parse_algorithm(s: &str) -> Result<Algorithm, String> {
    s.parse()
}

fn parse_count(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be at least 1".into()),
        Ok(n) => Ok(n),
        Err(_) => Err(format!("{s:?} is not a positive integer")),
    }
}
