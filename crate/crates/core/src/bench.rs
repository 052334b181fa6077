//! Timing and counter matrix across miner variants and series sizes.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::error::Result;
use crate::miner::{mine_series, Algorithm, MineOptions, MiningReport, Prefix};
use crate::series::NumericSeries;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub algorithms: Vec<Algorithm>,
    /// Each factor concatenates the input series with itself that many times.
    pub repeats: Vec<usize>,
    pub minsup: usize,
    /// Multiply `minsup` by the repeat factor.
    pub scale_minsup: bool,
    pub keypoints: bool,
    /// Timed runs per cell; the fastest is reported.
    pub runs: usize,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            algorithms: Algorithm::ALL.to_vec(),
            repeats: vec![1],
            minsup: 10,
            scale_minsup: false,
            keypoints: true,
            runs: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub algorithm: Algorithm,
    pub repeat: usize,
    pub n: usize,
    pub minsup: usize,
    pub wall_ms: f64,
    pub candidates_checked: u64,
    pub superpattern_occurrence_comparisons: u64,
    pub frequent_patterns: usize,
}

#[derive(Debug, Clone)]
pub struct BenchCell {
    pub row: BenchRow,
    pub report: MiningReport,
}

#[derive(Debug, Clone)]
pub struct BenchResult {
    /// Cells in configuration order: repeats outer, algorithms inner.
    pub cells: Vec<BenchCell>,
}

impl BenchResult {
    pub fn rows(&self) -> impl Iterator<Item = &BenchRow> {
        self.cells.iter().map(|c| &c.row)
    }

    /// `(repeat, algorithm)` cells whose frequent set differs from the first
    /// algorithm at the same repeat factor.
    pub fn disagreements(&self) -> Vec<(usize, Algorithm)> {
        let mut out = Vec::new();
        for cell in &self.cells {
            let first = self
                .cells
                .iter()
                .find(|c| c.row.repeat == cell.row.repeat)
                .expect("cell present");
            if first.report.frequent_set() != cell.report.frequent_set() {
                out.push((cell.row.repeat, cell.row.algorithm));
            }
        }
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(
            "algorithm,repeat,n,minsup,wall_ms,candidates_checked,superpattern_occurrence_comparisons,frequent_patterns\n",
        );
        for r in self.rows() {
            out.push_str(&format!(
                "{},{},{},{},{:.3},{},{},{}\n",
                r.algorithm,
                r.repeat,
                r.n,
                r.minsup,
                r.wall_ms,
                r.candidates_checked,
                r.superpattern_occurrence_comparisons,
                r.frequent_patterns
            ));
        }
        out
    }
}

fn millis(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Runs every (repeat, algorithm) cell sequentially. Timing covers keypoint
/// extraction and mining, not ingestion.
pub fn run_bench(t: &NumericSeries, prefix: &Prefix, config: &BenchConfig) -> Result<BenchResult> {
    let mut cells = Vec::new();
    for &repeat in &config.repeats {
        let series = t.repeated(repeat.max(1));
        let minsup = if config.scale_minsup {
            config.minsup * repeat.max(1)
        } else {
            config.minsup
        };
        for &algorithm in &config.algorithms {
            let options = MineOptions {
                algorithm,
                keypoints: config.keypoints,
                ..MineOptions::default()
            };
            let mut best = Duration::MAX;
            let mut report = None;
            for _ in 0..config.runs.max(1) {
                let start = Instant::now();
                let r = mine_series(&series, prefix, minsup, &options)?;
                best = best.min(start.elapsed());
                report = Some(r);
            }
            let report = report.expect("at least one run");
            cells.push(BenchCell {
                row: BenchRow {
                    algorithm,
                    repeat,
                    n: series.len(),
                    minsup,
                    wall_ms: millis(best),
                    candidates_checked: report.counters.candidates_checked,
                    superpattern_occurrence_comparisons: report
                        .counters
                        .superpattern_occurrence_comparisons,
                    frequent_patterns: report.cop_count(),
                },
                report,
            });
        }
    }
    Ok(BenchResult { cells })
}
