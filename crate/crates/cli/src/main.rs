mod args;

use std::fmt;
use std::fs::File;
use std::io::{self, Read, Write};
use std::path::Path;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use serde::Serialize;

use copmine::bench::{run_bench, BenchConfig};
use copmine::predictor::{run_prediction, PredictConfig, PredictionRun};
use copmine::series::load_series;
use copmine::{extract_keypoints, mine_series, Algorithm, MineOptions, NumericSeries};

use args::{BenchArgs, Cli, Command, InputArgs, KeypointsArgs, MineArgs, Output, PredictArgs};

const EXIT_USAGE: u8 = 2;
const EXIT_DATA: u8 = 3;
const EXIT_CONTRACT: u8 = 4;

#[derive(Debug)]
enum Failure {
    Core(copmine::Error),
    Io(io::Error),
    Disagreement(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Core(e) if e.is_contract() => EXIT_CONTRACT,
            Failure::Core(_) | Failure::Io(_) => EXIT_DATA,
            Failure::Disagreement(_) => EXIT_CONTRACT,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Core(e) => write!(f, "{e}"),
            Failure::Io(e) => write!(f, "{e}"),
            Failure::Disagreement(msg) => write!(f, "algorithms disagree: {msg}"),
        }
    }
}

impl From<copmine::Error> for Failure {
    fn from(e: copmine::Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let result = match &cli.command {
        Command::Keypoints(a) => keypoints(a),
        Command::Mine(a) => mine(a),
        Command::Predict(a) => predict(a),
        Command::Bench(a) => bench(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("copmine: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn load(input: &InputArgs) -> Result<NumericSeries, Failure> {
    let format = input.input_format();
    let series = if input.input == Path::new("-") {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf)?;
        load_series(buf.as_slice(), &format)?
    } else {
        let file = File::open(&input.input)
            .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", input.input.display())))?;
        load_series(file, &format)?
    };
    Ok(series)
}

fn emit(input: &InputArgs, text: &str) -> Result<(), Failure> {
    match &input.out {
        Some(path) => std::fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("output serialises");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct KeypointsOut<'a> {
    values: &'a [f64],
    source_index: &'a [usize],
}

fn keypoints(a: &KeypointsArgs) -> Result<(), Failure> {
    let t = load(&a.input)?;
    let k = extract_keypoints(&t);
    let text = match a.output {
        Some(Output::Json) => json(&KeypointsOut {
            values: k.values(),
            source_index: k.source_index(),
        }),
        Some(Output::Csv) => {
            let mut s = String::from("index,value\n");
            for (v, i) in k.values().iter().zip(k.source_index()) {
                s.push_str(&format!("{i},{v}\n"));
            }
            s
        }
        None => {
            let mut s = String::new();
            for (v, i) in k.values().iter().zip(k.source_index()) {
                if a.with_index {
                    s.push_str(&format!("{i}\t{v}\n"));
                } else {
                    s.push_str(&format!("{v}\n"));
                }
            }
            s
        }
    };
    emit(&a.input, &text)
}

fn mine(a: &MineArgs) -> Result<(), Failure> {
    let t = load(&a.input)?;
    let options = MineOptions {
        algorithm: a.algo,
        keypoints: !a.no_keypoints,
        trace: a.trace,
        max_len: None,
    };
    let report = mine_series(&t, &a.prefix.prefix(), a.minsup, &options)?;
    let text = match a.output {
        Output::Json => {
            let mut s = report.to_json();
            s.push('\n');
            s
        }
        Output::Csv => report.to_csv(),
    };
    emit(&a.input, &text)
}

fn prediction_csv(run: &PredictionRun) -> String {
    let e = &run.evaluation;
    let mut s = String::from("pattern,train_support,test_support,precision,recall,f1\n");
    for p in &run.predicted {
        s.push_str(&format!(
            "\"{}\",{},{},{:.4},{:.4},{:.4}\n",
            p.pattern, p.train_support, p.test_support, e.precision, e.recall, e.f1
        ));
    }
    s
}

fn predict(a: &PredictArgs) -> Result<(), Failure> {
    let t = load(&a.input)?;
    let config = PredictConfig {
        ratio: a.ratio,
        top_k: a.top_k,
        horizon: a.horizon,
        minsup: a.minsup,
        keypoints: !a.no_keypoints,
    };
    let run = run_prediction(&t, &a.prefix.prefix(), &config)?;
    let text = match a.output {
        Output::Json => json(&run),
        Output::Csv => prediction_csv(&run),
    };
    emit(&a.input, &text)
}

fn bench(a: &BenchArgs) -> Result<(), Failure> {
    let t = load(&a.input)?;
    let config = BenchConfig {
        algorithms: if a.algo.is_empty() {
            Algorithm::ALL.to_vec()
        } else {
            a.algo.clone()
        },
        repeats: a.repeat.clone(),
        minsup: a.minsup,
        scale_minsup: a.scale_minsup,
        keypoints: !a.no_keypoints,
        runs: a.runs,
    };
    let result = run_bench(&t, &a.prefix.prefix(), &config)?;
    let text = match a.output {
        Output::Csv => result.to_csv(),
        Output::Json => json(&result.rows().collect::<Vec<_>>()),
    };
    emit(&a.input, &text)?;
    let disagreements = result.disagreements();
    if !disagreements.is_empty() {
        let cells: Vec<String> = disagreements
            .iter()
            .map(|(r, algo)| format!("{algo} at repeat {r}"))
            .collect();
        return Err(Failure::Disagreement(cells.join(", ")));
    }
    Ok(())
}
